#include "seqrnn/engine.hpp"

#include <cmath>
#include <string>

#include "seqrnn/errors.hpp"

namespace seqrnn {

namespace {

std::size_t count_unmasked(const std::vector<std::uint8_t>& mask) {
  std::size_t n = 0;
  for (auto m : mask) n += (m != 0);
  return n;
}

void check_sequence_shapes(const CellParams& p, const DenseMatrix& xs,
                           const DenseMatrix& ys, const std::vector<std::uint8_t>& mask) {
  const CellDims d = dims_of(p);
  if (xs.rows == 0) throw ShapeError("forward_sequence: sequence has T == 0 steps");
  if (xs.cols != d.d_in) {
    throw ShapeError("forward_sequence: inputs have " + std::to_string(xs.cols) +
                     " columns but the cell expects d_in=" + std::to_string(d.d_in));
  }
  if (ys.rows != xs.rows || ys.cols != d.d_out) {
    throw ShapeError("forward_sequence: targets are " + std::to_string(ys.rows) +
                     "x" + std::to_string(ys.cols) + ", expected " +
                     std::to_string(xs.rows) + "x" + std::to_string(d.d_out));
  }
  if (mask.size() != xs.rows) {
    throw ShapeError("forward_sequence: mask has length " +
                     std::to_string(mask.size()) + ", expected T=" +
                     std::to_string(xs.rows));
  }
  if (count_unmasked(mask) == 0) {
    throw ShapeError("forward_sequence: mask excludes every step");
  }
}

}  // namespace

ForwardTrace forward_sequence(const CellParams& p, const DenseMatrix& xs,
                              const DenseMatrix& ys_target,
                              const std::vector<std::uint8_t>& mask) {
  check_sequence_shapes(p, xs, ys_target, mask);
  const std::size_t t_len = xs.rows;
  const std::size_t n_unmasked = count_unmasked(mask);
  const CellDims d = dims_of(p);

  ForwardTrace trace;
  trace.steps.reserve(t_len);
  trace.per_step_loss.assign(t_len, 0.0);

  DenseVector h(d.hidden);
  double loss_sum = 0.0;
  for (std::size_t t = 0; t < t_len; ++t) {
    StepCache c = cell_step(p, h, row_vector(xs, t));
    c.y = output_project(p, c.h);
    h = c.h;
    if (mask[t]) {
      double step = 0.0;
      for (std::size_t i = 0; i < d.d_out; ++i) {
        const double diff = c.y[i] - ys_target(t, i);
        step += diff * diff;
      }
      step /= static_cast<double>(d.d_out);
      trace.per_step_loss[t] = step;
      loss_sum += step;
    }
    trace.steps.push_back(std::move(c));
  }
  trace.total_loss = loss_sum / static_cast<double>(n_unmasked);
  return trace;
}

Gradients backward_sequence(const CellParams& p, const ForwardTrace& trace,
                            const DenseMatrix& xs, const DenseMatrix& ys_target,
                            const std::vector<std::uint8_t>& mask) {
  check_sequence_shapes(p, xs, ys_target, mask);
  if (trace.steps.size() != xs.rows) {
    throw ShapeError("backward_sequence: trace has " +
                     std::to_string(trace.steps.size()) + " steps, expected " +
                     std::to_string(xs.rows));
  }
  const CellDims d = dims_of(p);
  const double inv_norm =
      1.0 / (static_cast<double>(count_unmasked(mask)) * static_cast<double>(d.d_out));

  Gradients grads = zero_gradients_like(p);
  DenseVector dh_carry(d.hidden);  // dL/dh_t arriving from step t+1

  for (std::size_t ti = trace.steps.size(); ti-- > 0;) {
    const StepCache& c = trace.steps[ti];

    // dL/dy_t of the masked mean-squared loss.
    DenseVector dy(d.d_out);
    if (mask[ti]) {
      for (std::size_t i = 0; i < d.d_out; ++i) {
        dy[i] = 2.0 * (c.y[i] - ys_target(ti, i)) * inv_norm;
      }
    }

    if (std::holds_alternative<TanhParams>(p)) {
      const TanhParams& q = std::get<TanhParams>(p);
      TanhParams& g = std::get<TanhParams>(grads);

      add_outer(g.w_hy, dy, c.h);
      add_scaled(g.b_y, 1.0, dy);

      DenseVector dh = matvec_transposed(q.w_hy, dy);
      add_scaled(dh, 1.0, dh_carry);

      // pre-activation gradient: dh . tanh'(pre) with tanh' = 1 - h^2
      DenseVector a(d.hidden);
      for (std::size_t i = 0; i < d.hidden; ++i) a[i] = dh[i] * (1.0 - c.h[i] * c.h[i]);

      add_outer(g.w_xh, a, c.x);
      add_outer(g.w_hh, a, c.h_prev);
      add_scaled(g.b_h, 1.0, a);

      dh_carry = matvec_transposed(q.w_hh, a);
    } else {
      const GruParams& q = std::get<GruParams>(p);
      GruParams& g = std::get<GruParams>(grads);

      add_outer(g.w_hy, dy, c.h);
      add_scaled(g.b_y, 1.0, dy);

      DenseVector dh = matvec_transposed(q.w_hy, dy);
      add_scaled(dh, 1.0, dh_carry);

      // h = (1-z) . h_prev + z . h_cand
      DenseVector ac(d.hidden);  // pre-activation grad of the candidate
      DenseVector az(d.hidden);  // pre-activation grad of the update gate
      for (std::size_t i = 0; i < d.hidden; ++i) {
        const double dcand = dh[i] * c.z[i];
        ac[i] = dcand * (1.0 - c.h_cand[i] * c.h_cand[i]);
        const double dz = dh[i] * (c.h_cand[i] - c.h_prev[i]);
        az[i] = dz * c.z[i] * (1.0 - c.z[i]);
      }

      // Candidate pre-activation feeds W_xh x + W_hh (r . h_prev) + b_h.
      add_outer(g.w_xh, ac, c.x);
      DenseVector rh = hadamard(c.r, c.h_prev);
      add_outer(g.w_hh, ac, rh);
      add_scaled(g.b_h, 1.0, ac);

      // Reset gate receives gradient only through the candidate path.
      DenseVector whh_t_ac = matvec_transposed(q.w_hh, ac);
      DenseVector ar(d.hidden);
      for (std::size_t i = 0; i < d.hidden; ++i) {
        ar[i] = whh_t_ac[i] * c.h_prev[i] * c.r[i] * (1.0 - c.r[i]);
      }

      add_outer(g.w_xz, az, c.x);
      add_outer(g.w_hz, az, c.h_prev);
      add_scaled(g.b_z, 1.0, az);
      add_outer(g.w_xr, ar, c.x);
      add_outer(g.w_hr, ar, c.h_prev);
      add_scaled(g.b_r, 1.0, ar);

      // Carry to h_{t-1}: direct interpolation path plus all three gate paths.
      DenseVector carry(d.hidden);
      for (std::size_t i = 0; i < d.hidden; ++i) {
        carry[i] = dh[i] * (1.0 - c.z[i]) + whh_t_ac[i] * c.r[i];
      }
      add_scaled(carry, 1.0, matvec_transposed(q.w_hz, az));
      add_scaled(carry, 1.0, matvec_transposed(q.w_hr, ar));
      dh_carry = std::move(carry);
    }
  }
  return grads;
}

Gradients finite_difference_grads(const CellParams& p, const DenseMatrix& xs,
                                  const DenseMatrix& ys_target,
                                  const std::vector<std::uint8_t>& mask,
                                  double eps) {
  if (!(eps > 0.0)) throw ShapeError("finite_difference_grads: eps must be > 0");
  CellParams work = p;
  Gradients grads = zero_gradients_like(p);

  // Walk parameter arrays of the working copy and the gradient structure in
  // lockstep; for_each_array visits them in the same fixed order.
  std::vector<std::span<double>> param_spans;
  std::vector<std::span<double>> grad_spans;
  for_each_array(work, [&](const char*, auto& arr) { param_spans.push_back(arr.flat()); });
  for_each_array(grads, [&](const char*, auto& arr) { grad_spans.push_back(arr.flat()); });

  for (std::size_t a = 0; a < param_spans.size(); ++a) {
    auto ps = param_spans[a];
    auto gs = grad_spans[a];
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double saved = ps[i];
      ps[i] = saved + eps;
      const double up = forward_sequence(work, xs, ys_target, mask).total_loss;
      ps[i] = saved - eps;
      const double down = forward_sequence(work, xs, ys_target, mask).total_loss;
      ps[i] = saved;
      gs[i] = (up - down) / (2.0 * eps);
    }
  }
  return grads;
}

Gradients clip_gradients(Gradients g, double threshold) {
  if (!(threshold > 0.0)) throw ShapeError("clip_gradients: threshold must be > 0");
  const double norm = gradient_norm(g);
  if (norm <= threshold) return g;
  const double scale = threshold / norm;
  for_each_array(g, [&](const char*, auto& arr) {
    for (double& x : arr.flat()) x *= scale;
  });
  return g;
}

Gradients zero_gradients_like(const CellParams& p) {
  Gradients g = p;
  for_each_array(g, [](const char*, auto& arr) {
    for (double& x : arr.flat()) x = 0.0;
  });
  return g;
}

void accumulate_gradients(Gradients& into, const Gradients& g) {
  std::vector<std::span<double>> dst;
  std::vector<std::span<const double>> src;
  for_each_array(into, [&](const char*, auto& arr) { dst.push_back(arr.flat()); });
  for_each_array(g, [&](const char*, const auto& arr) { src.push_back(arr.flat()); });
  if (dst.size() != src.size()) {
    throw ShapeError("accumulate_gradients: structures do not match");
  }
  for (std::size_t a = 0; a < dst.size(); ++a) {
    if (dst[a].size() != src[a].size()) {
      throw ShapeError("accumulate_gradients: array " + std::to_string(a) +
                       " has mismatched length");
    }
    for (std::size_t i = 0; i < dst[a].size(); ++i) dst[a][i] += src[a][i];
  }
}

double gradient_norm(const Gradients& g) {
  std::vector<std::span<const double>> arrays;
  for_each_array(g, [&](const char*, const auto& arr) { arrays.push_back(arr.flat()); });
  return l2_norm_all(arrays);
}

}  // namespace seqrnn
