#include "seqrnn/linalg.hpp"

#include <cmath>
#include <string>

#include "seqrnn/errors.hpp"

namespace seqrnn {

namespace {

[[noreturn]] void throw_shape(const std::string& what) { throw ShapeError(what); }

double stable_sigmoid(double x) {
  // Branch keeps exp() argument non-positive, so large |x| saturates
  // instead of overflowing.
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

DenseVector matvec(const DenseMatrix& m, const DenseVector& v) {
  if (m.cols != v.len()) {
    throw_shape("matvec: matrix is " + std::to_string(m.rows) + "x" +
                std::to_string(m.cols) + " but vector has length " +
                std::to_string(v.len()));
  }
  DenseVector out(m.rows);
  const double* a = m.data.data();
  for (std::size_t i = 0; i < m.rows; ++i) {
    double acc = 0.0;
    const double* row = a + i * m.cols;
    for (std::size_t j = 0; j < m.cols; ++j) acc += row[j] * v.data[j];
    out.data[i] = acc;
  }
  return out;
}

DenseVector matvec_transposed(const DenseMatrix& m, const DenseVector& v) {
  if (m.rows != v.len()) {
    throw_shape("matvec_transposed: matrix is " + std::to_string(m.rows) + "x" +
                std::to_string(m.cols) + " but vector has length " +
                std::to_string(v.len()));
  }
  DenseVector out(m.cols);
  const double* a = m.data.data();
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double s = v.data[i];
    const double* row = a + i * m.cols;
    for (std::size_t j = 0; j < m.cols; ++j) out.data[j] += s * row[j];
  }
  return out;
}

DenseVector hadamard(const DenseVector& a, const DenseVector& b) {
  if (a.len() != b.len()) {
    throw_shape("hadamard: lengths differ (" + std::to_string(a.len()) + " vs " +
                std::to_string(b.len()) + ")");
  }
  DenseVector out(a.len());
  for (std::size_t i = 0; i < a.len(); ++i) out.data[i] = a.data[i] * b.data[i];
  return out;
}

DenseVector sigmoid_map(const DenseVector& v) {
  DenseVector out(v.len());
  for (std::size_t i = 0; i < v.len(); ++i) out.data[i] = stable_sigmoid(v.data[i]);
  return out;
}

DenseVector tanh_map(const DenseVector& v) {
  DenseVector out(v.len());
  for (std::size_t i = 0; i < v.len(); ++i) {
    const double x = v.data[i];
    out.data[i] = std::copysign(std::tanh(std::fabs(x)), x);
  }
  return out;
}

double l2_norm_all(const std::vector<std::span<const double>>& arrays) {
  double sum = 0.0;
  for (const auto& a : arrays) {
    for (double x : a) sum += x * x;
  }
  return std::sqrt(sum);
}

void add_outer(DenseMatrix& acc, const DenseVector& a, const DenseVector& b) {
  if (acc.rows != a.len() || acc.cols != b.len()) {
    throw_shape("add_outer: accumulator is " + std::to_string(acc.rows) + "x" +
                std::to_string(acc.cols) + " but outer product is " +
                std::to_string(a.len()) + "x" + std::to_string(b.len()));
  }
  double* out = acc.data.data();
  for (std::size_t i = 0; i < a.len(); ++i) {
    const double s = a.data[i];
    double* row = out + i * acc.cols;
    for (std::size_t j = 0; j < b.len(); ++j) row[j] += s * b.data[j];
  }
}

void add_scaled(DenseVector& y, double alpha, const DenseVector& x) {
  if (y.len() != x.len()) {
    throw_shape("add_scaled: lengths differ (" + std::to_string(y.len()) + " vs " +
                std::to_string(x.len()) + ")");
  }
  for (std::size_t i = 0; i < y.len(); ++i) y.data[i] += alpha * x.data[i];
}

DenseVector add(const DenseVector& a, const DenseVector& b) {
  if (a.len() != b.len()) {
    throw_shape("add: lengths differ (" + std::to_string(a.len()) + " vs " +
                std::to_string(b.len()) + ")");
  }
  DenseVector out(a.len());
  for (std::size_t i = 0; i < a.len(); ++i) out.data[i] = a.data[i] + b.data[i];
  return out;
}

DenseVector sub(const DenseVector& a, const DenseVector& b) {
  if (a.len() != b.len()) {
    throw_shape("sub: lengths differ (" + std::to_string(a.len()) + " vs " +
                std::to_string(b.len()) + ")");
  }
  DenseVector out(a.len());
  for (std::size_t i = 0; i < a.len(); ++i) out.data[i] = a.data[i] - b.data[i];
  return out;
}

DenseVector row_vector(const DenseMatrix& m, std::size_t i) {
  DenseVector out(m.cols);
  const auto r = m.row(i);
  for (std::size_t j = 0; j < m.cols; ++j) out.data[j] = r[j];
  return out;
}

bool all_finite(std::span<const double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace seqrnn
