#include "seqrnn/cells.hpp"

#include <cmath>
#include <string>

#include "seqrnn/errors.hpp"

namespace seqrnn {

namespace {

void fill_uniform(DenseMatrix& m, double scale, Rng& rng) {
  for (double& x : m.data) x = rng.uniform(-scale, scale);
}

void check_vec(const char* op, const DenseVector& v, std::size_t want,
               const char* what) {
  if (v.len() != want) {
    throw ShapeError(std::string(op) + ": " + what + " has length " +
                     std::to_string(v.len()) + ", expected " +
                     std::to_string(want));
  }
}

}  // namespace

CellKind kind_of(const CellParams& p) {
  return std::holds_alternative<TanhParams>(p) ? CellKind::Tanh : CellKind::Gru;
}

CellDims dims_of(const CellParams& p) {
  return std::visit(
      [](const auto& q) {
        return CellDims{q.w_xh.cols, q.w_xh.rows, q.w_hy.rows};
      },
      p);
}

double default_init_scale(std::size_t hidden) {
  return 1.0 / std::sqrt(static_cast<double>(hidden));
}

CellParams init_params(CellKind kind, std::size_t d_in, std::size_t hidden,
                       std::size_t d_out, double scale, Rng& rng) {
  if (d_in < 1 || hidden < 1 || d_out < 1) {
    throw ShapeError("init_params: dimensions must be >= 1 (got d_in=" +
                     std::to_string(d_in) + ", hidden=" + std::to_string(hidden) +
                     ", d_out=" + std::to_string(d_out) + ")");
  }
  if (!(scale > 0.0)) {
    throw ShapeError("init_params: scale must be > 0");
  }
  if (kind == CellKind::Tanh) {
    TanhParams p;
    p.w_xh = DenseMatrix(hidden, d_in);
    p.w_hh = DenseMatrix(hidden, hidden);
    p.b_h = DenseVector(hidden);
    p.w_hy = DenseMatrix(d_out, hidden);
    p.b_y = DenseVector(d_out);
    fill_uniform(p.w_xh, scale, rng);
    fill_uniform(p.w_hh, scale, rng);
    fill_uniform(p.w_hy, scale, rng);
    return p;
  }
  GruParams p;
  p.w_xz = DenseMatrix(hidden, d_in);
  p.w_hz = DenseMatrix(hidden, hidden);
  p.b_z = DenseVector(hidden);
  p.w_xr = DenseMatrix(hidden, d_in);
  p.w_hr = DenseMatrix(hidden, hidden);
  p.b_r = DenseVector(hidden);
  p.w_xh = DenseMatrix(hidden, d_in);
  p.w_hh = DenseMatrix(hidden, hidden);
  p.b_h = DenseVector(hidden);
  p.w_hy = DenseMatrix(d_out, hidden);
  p.b_y = DenseVector(d_out);
  fill_uniform(p.w_xz, scale, rng);
  fill_uniform(p.w_hz, scale, rng);
  fill_uniform(p.w_xr, scale, rng);
  fill_uniform(p.w_hr, scale, rng);
  fill_uniform(p.w_xh, scale, rng);
  fill_uniform(p.w_hh, scale, rng);
  fill_uniform(p.w_hy, scale, rng);
  return p;
}

StepCache tanh_step(const TanhParams& p, const DenseVector& h_prev,
                    const DenseVector& x_t) {
  check_vec("tanh_step", x_t, p.w_xh.cols, "x_t");
  check_vec("tanh_step", h_prev, p.w_hh.rows, "h_prev");
  StepCache c;
  c.x = x_t;
  c.h_prev = h_prev;
  DenseVector pre = add(matvec(p.w_xh, x_t), matvec(p.w_hh, h_prev));
  add_scaled(pre, 1.0, p.b_h);
  c.h = tanh_map(pre);
  return c;
}

StepCache gru_step(const GruParams& p, const DenseVector& h_prev,
                   const DenseVector& x_t) {
  check_vec("gru_step", x_t, p.w_xh.cols, "x_t");
  check_vec("gru_step", h_prev, p.w_hh.rows, "h_prev");
  StepCache c;
  c.x = x_t;
  c.h_prev = h_prev;

  DenseVector zp = add(matvec(p.w_xz, x_t), matvec(p.w_hz, h_prev));
  add_scaled(zp, 1.0, p.b_z);
  c.z = sigmoid_map(zp);

  DenseVector rp = add(matvec(p.w_xr, x_t), matvec(p.w_hr, h_prev));
  add_scaled(rp, 1.0, p.b_r);
  c.r = sigmoid_map(rp);

  DenseVector cp = add(matvec(p.w_xh, x_t), matvec(p.w_hh, hadamard(c.r, h_prev)));
  add_scaled(cp, 1.0, p.b_h);
  c.h_cand = tanh_map(cp);

  // h_t = (1 - z) . h_prev + z . h_cand
  c.h = DenseVector(h_prev.len());
  for (std::size_t i = 0; i < h_prev.len(); ++i) {
    c.h[i] = (1.0 - c.z[i]) * h_prev[i] + c.z[i] * c.h_cand[i];
  }
  return c;
}

StepCache cell_step(const CellParams& p, const DenseVector& h_prev,
                    const DenseVector& x_t) {
  return std::visit(
      [&](const auto& q) -> StepCache {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, TanhParams>) {
          return tanh_step(q, h_prev, x_t);
        } else {
          return gru_step(q, h_prev, x_t);
        }
      },
      p);
}

DenseVector output_project(const CellParams& p, const DenseVector& h_t) {
  return std::visit(
      [&](const auto& q) {
        check_vec("output_project", h_t, q.w_hy.cols, "h_t");
        DenseVector y = matvec(q.w_hy, h_t);
        add_scaled(y, 1.0, q.b_y);
        return y;
      },
      p);
}

}  // namespace seqrnn
