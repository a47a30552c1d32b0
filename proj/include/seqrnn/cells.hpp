#pragma once

#include <cstdint>
#include <variant>

#include "seqrnn/linalg.hpp"
#include "seqrnn/rng.hpp"

namespace seqrnn {

enum class CellKind { Tanh, Gru };

// Weights of one Tanh-RNN layer plus the linear output projection.
// Hidden update: h_t = tanh(W_xh x_t + W_hh h_{t-1} + b_h)
// Output:        y_t = W_hy h_t + b_y
struct TanhParams {
  DenseMatrix w_xh;  // H x D_in
  DenseMatrix w_hh;  // H x H
  DenseVector b_h;   // H
  DenseMatrix w_hy;  // D_out x H
  DenseVector b_y;   // D_out
};

// GRU layer. Gate order is fixed as (update, reset, candidate) everywhere:
//   z_t = sigmoid(W_xz x_t + W_hz h_{t-1} + b_z)
//   r_t = sigmoid(W_xr x_t + W_hr h_{t-1} + b_r)
//   hc_t = tanh(W_xh x_t + W_hh (r_t . h_{t-1}) + b_h)
//   h_t = (1 - z_t) . h_{t-1} + z_t . hc_t
struct GruParams {
  DenseMatrix w_xz, w_hz;
  DenseVector b_z;
  DenseMatrix w_xr, w_hr;
  DenseVector b_r;
  DenseMatrix w_xh, w_hh;
  DenseVector b_h;
  DenseMatrix w_hy;
  DenseVector b_y;
};

using CellParams = std::variant<TanhParams, GruParams>;

// Gradients mirror the parameter layout exactly; reusing the structs keeps
// every per-array loop (clip, SGD, norms, finite differences) shared.
using Gradients = CellParams;

struct CellDims {
  std::size_t d_in = 0;
  std::size_t hidden = 0;
  std::size_t d_out = 0;
};

// Everything backpropagation through time needs from one step.
// z/r/h_cand are empty for the Tanh cell.
struct StepCache {
  DenseVector x;
  DenseVector h_prev;
  DenseVector h;
  DenseVector y;
  DenseVector z;
  DenseVector r;
  DenseVector h_cand;
};

CellKind kind_of(const CellParams& p);
CellDims dims_of(const CellParams& p);

// Weights uniform in [-scale, +scale], biases zero. Draw order is fixed
// (row-major per matrix; GRU blocks in z, r, candidate, output order) so a
// seed pins the parameters bit-exactly.
CellParams init_params(CellKind kind, std::size_t d_in, std::size_t hidden,
                       std::size_t d_out, double scale, Rng& rng);

// Convention for the default init scale when a config leaves it at <= 0.
double default_init_scale(std::size_t hidden);

StepCache tanh_step(const TanhParams& p, const DenseVector& h_prev,
                    const DenseVector& x_t);
StepCache gru_step(const GruParams& p, const DenseVector& h_prev,
                   const DenseVector& x_t);
StepCache cell_step(const CellParams& p, const DenseVector& h_prev,
                    const DenseVector& x_t);

// y_t = W_hy h_t + b_y. Linear; no squashing.
DenseVector output_project(const CellParams& p, const DenseVector& h_t);

// Visits every parameter array as ("name", DenseMatrix&) or
// ("name", DenseVector&), in the serialization order.
template <typename F>
void for_each_array(TanhParams& p, F&& f) {
  f("W_xh", p.w_xh);
  f("W_hh", p.w_hh);
  f("b_h", p.b_h);
  f("W_hy", p.w_hy);
  f("b_y", p.b_y);
}

template <typename F>
void for_each_array(const TanhParams& p, F&& f) {
  f("W_xh", p.w_xh);
  f("W_hh", p.w_hh);
  f("b_h", p.b_h);
  f("W_hy", p.w_hy);
  f("b_y", p.b_y);
}

template <typename F>
void for_each_array(GruParams& p, F&& f) {
  f("W_xz", p.w_xz);
  f("W_hz", p.w_hz);
  f("b_z", p.b_z);
  f("W_xr", p.w_xr);
  f("W_hr", p.w_hr);
  f("b_r", p.b_r);
  f("W_xh", p.w_xh);
  f("W_hh", p.w_hh);
  f("b_h", p.b_h);
  f("W_hy", p.w_hy);
  f("b_y", p.b_y);
}

template <typename F>
void for_each_array(const GruParams& p, F&& f) {
  f("W_xz", p.w_xz);
  f("W_hz", p.w_hz);
  f("b_z", p.b_z);
  f("W_xr", p.w_xr);
  f("W_hr", p.w_hr);
  f("b_r", p.b_r);
  f("W_xh", p.w_xh);
  f("W_hh", p.w_hh);
  f("b_h", p.b_h);
  f("W_hy", p.w_hy);
  f("b_y", p.b_y);
}

template <typename F>
void for_each_array(CellParams& p, F&& f) {
  std::visit([&](auto& q) { for_each_array(q, f); }, p);
}

template <typename F>
void for_each_array(const CellParams& p, F&& f) {
  std::visit([&](const auto& q) { for_each_array(q, f); }, p);
}

}  // namespace seqrnn
