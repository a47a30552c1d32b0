#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace seqrnn {

// Row-major dense containers. The only numeric storage in the library;
// everything is real64 and shape checks are explicit, never broadcast.

struct DenseVector {
  std::vector<double> data;

  DenseVector() = default;
  explicit DenseVector(std::size_t n, double fill = 0.0) : data(n, fill) {}
  DenseVector(std::initializer_list<double> xs) : data(xs) {}

  std::size_t len() const { return data.size(); }
  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }
  std::span<double> flat() { return data; }
  std::span<const double> flat() const { return data; }
};

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // length rows*cols, row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  std::span<double> flat() { return data; }
  std::span<const double> flat() const { return data; }
};

// result[i] = sum_j m(i,j) v[j]
DenseVector matvec(const DenseMatrix& m, const DenseVector& v);

// result[j] = sum_i m(i,j) v[i], i.e. m^T v. Used by backpropagation.
DenseVector matvec_transposed(const DenseMatrix& m, const DenseVector& v);

// Elementwise product.
DenseVector hadamard(const DenseVector& a, const DenseVector& b);

// Elementwise logistic sigmoid / tanh. Saturate cleanly for |x| up to
// ~700 and beyond; never produce NaN from finite input. tanh_map is odd
// by construction (computed on |x| with the sign copied back).
DenseVector sigmoid_map(const DenseVector& v);
DenseVector tanh_map(const DenseVector& v);

// sqrt of the sum of squares of every entry across all arrays.
double l2_norm_all(const std::vector<std::span<const double>>& arrays);

// acc += a b^T
void add_outer(DenseMatrix& acc, const DenseVector& a, const DenseVector& b);
// y += alpha * x
void add_scaled(DenseVector& y, double alpha, const DenseVector& x);

DenseVector add(const DenseVector& a, const DenseVector& b);
DenseVector sub(const DenseVector& a, const DenseVector& b);

// Copy of row i of m as a vector.
DenseVector row_vector(const DenseMatrix& m, std::size_t i);

bool all_finite(std::span<const double> xs);

}  // namespace seqrnn
