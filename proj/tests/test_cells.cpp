#include <doctest.h>

#include <cmath>
#include <vector>

#include "seqrnn/cells.hpp"
#include "seqrnn/errors.hpp"
#include "seqrnn/rng.hpp"

using namespace seqrnn;

namespace {

// Scalar-loop oracle for the GRU step: plain index arithmetic over the
// four equations, no shared code with gru_step. Rows of each weight matrix
// are scanned with explicit offsets into the flat storage.
struct GruOracleOut {
  std::vector<double> z, r, cand, h;
};

GruOracleOut gru_step_oracle(const GruParams& p, const std::vector<double>& h_prev,
                             const std::vector<double>& x) {
  const std::size_t hid = p.w_hh.rows;
  const std::size_t din = p.w_xh.cols;
  GruOracleOut o;
  o.z.resize(hid);
  o.r.resize(hid);
  o.cand.resize(hid);
  o.h.resize(hid);
  for (std::size_t i = 0; i < hid; ++i) {
    double zp = p.b_z.data[i];
    double rp = p.b_r.data[i];
    for (std::size_t j = 0; j < din; ++j) {
      zp += p.w_xz.data[i * din + j] * x[j];
      rp += p.w_xr.data[i * din + j] * x[j];
    }
    for (std::size_t j = 0; j < hid; ++j) {
      zp += p.w_hz.data[i * hid + j] * h_prev[j];
      rp += p.w_hr.data[i * hid + j] * h_prev[j];
    }
    o.z[i] = 1.0 / (1.0 + std::exp(-zp));
    o.r[i] = 1.0 / (1.0 + std::exp(-rp));
  }
  for (std::size_t i = 0; i < hid; ++i) {
    double cp = p.b_h.data[i];
    for (std::size_t j = 0; j < din; ++j) cp += p.w_xh.data[i * din + j] * x[j];
    for (std::size_t j = 0; j < hid; ++j) {
      cp += p.w_hh.data[i * hid + j] * (o.r[j] * h_prev[j]);
    }
    o.cand[i] = std::tanh(cp);
    o.h[i] = (1.0 - o.z[i]) * h_prev[i] + o.z[i] * o.cand[i];
  }
  return o;
}

GruParams zero_gru(std::size_t d_in, std::size_t hid, std::size_t d_out) {
  Rng rng(0);
  CellParams p = init_params(CellKind::Gru, d_in, hid, d_out, 1e-300, rng);
  GruParams g = std::get<GruParams>(p);
  for_each_array(g, [](const char*, auto& arr) {
    for (double& x : arr.flat()) x = 0.0;
  });
  return g;
}

}  // namespace

TEST_CASE("init_params produces the configured shapes") {
  Rng rng(1);
  const CellParams p = init_params(CellKind::Gru, 2, 7, 1, 0.5, rng);
  const GruParams& g = std::get<GruParams>(p);
  CHECK(g.w_xz.rows == 7);
  CHECK(g.w_xz.cols == 2);
  CHECK(g.w_hh.rows == 7);
  CHECK(g.w_hh.cols == 7);
  CHECK(g.w_hy.rows == 1);
  CHECK(g.w_hy.cols == 7);
  for (double b : g.b_z.data) CHECK(b == 0.0);
  for (double b : g.b_y.data) CHECK(b == 0.0);
  for (double w : g.w_xh.data) {
    CHECK(w >= -0.5);
    CHECK(w <= 0.5);
  }

  Rng rng2(1);
  const CellParams q = init_params(CellKind::Gru, 49, 120, 49, 0.1, rng2);
  const GruParams& g2 = std::get<GruParams>(q);
  CHECK(g2.w_xh.rows == 120);
  CHECK(g2.w_xh.cols == 49);
  CHECK(g2.w_hy.rows == 49);
  CHECK(g2.w_hy.cols == 120);

  const CellDims d = dims_of(q);
  CHECK(d.d_in == 49);
  CHECK(d.hidden == 120);
  CHECK(d.d_out == 49);
}

TEST_CASE("init_params rejects bad arguments") {
  Rng rng(1);
  CHECK_THROWS_AS(init_params(CellKind::Gru, 2, 7, 1, 0.0, rng), ShapeError);
  CHECK_THROWS_AS(init_params(CellKind::Gru, 0, 7, 1, 0.5, rng), ShapeError);
  CHECK_THROWS_AS(init_params(CellKind::Tanh, 2, 0, 1, 0.5, rng), ShapeError);

  // scale -> 0+ yields near-zero weights
  Rng rng2(1);
  const CellParams p = init_params(CellKind::Tanh, 2, 3, 1, 1e-300, rng2);
  for_each_array(p, [](const char*, const auto& arr) {
    for (double x : arr.flat()) CHECK(std::fabs(x) <= 1e-300);
  });
}

TEST_CASE("init_params is seed-deterministic") {
  Rng a(77), b(77);
  const CellParams p = init_params(CellKind::Gru, 3, 5, 2, 0.4, a);
  const CellParams q = init_params(CellKind::Gru, 3, 5, 2, 0.4, b);
  std::vector<double> pa, qa;
  for_each_array(p, [&](const char*, const auto& arr) {
    pa.insert(pa.end(), arr.flat().begin(), arr.flat().end());
  });
  for_each_array(q, [&](const char*, const auto& arr) {
    qa.insert(qa.end(), arr.flat().begin(), arr.flat().end());
  });
  CHECK(pa == qa);
}

TEST_CASE("tanh_step") {
  Rng rng(3);
  CellParams zero = init_params(CellKind::Tanh, 2, 2, 1, 1e-300, rng);
  for_each_array(zero, [](const char*, auto& arr) {
    for (double& x : arr.flat()) x = 0.0;
  });
  TanhParams& p = std::get<TanhParams>(zero);

  // all-zero params: h is zero whatever the inputs
  StepCache c = tanh_step(p, DenseVector{0.3, -2.0}, DenseVector{5.0, 1.0});
  CHECK(c.h[0] == 0.0);
  CHECK(c.h[1] == 0.0);

  // W_xh = I: h = tanh(x) entrywise
  p.w_xh(0, 0) = 1.0;
  p.w_xh(1, 1) = 1.0;
  c = tanh_step(p, DenseVector(2), DenseVector{0.5, -0.5});
  CHECK(c.h[0] == doctest::Approx(std::tanh(0.5)));
  CHECK(c.h[1] == doctest::Approx(std::tanh(-0.5)));

  // huge h_prev stays bounded
  Rng rng2(4);
  const CellParams rand_p = init_params(CellKind::Tanh, 2, 4, 1, 0.7, rng2);
  const StepCache big = tanh_step(std::get<TanhParams>(rand_p),
                                  DenseVector{1e6, -1e6, 1e6, -1e6},
                                  DenseVector{0.1, 0.2});
  for (double h : big.h.data) {
    // saturated pre-activations round to exactly +/-1 in float64
    CHECK(std::fabs(h) <= 1.0);
    CHECK(std::isfinite(h));
  }
}

TEST_CASE("gru_step trivial cases") {
  GruParams p = zero_gru(1, 1, 1);

  // all-zero params: z=r=0.5, cand=0, h = 0.5 * h_prev
  StepCache c = gru_step(p, DenseVector{0.8}, DenseVector{0.0});
  CHECK(c.z[0] == 0.5);
  CHECK(c.r[0] == 0.5);
  CHECK(c.h_cand[0] == 0.0);
  CHECK(c.h[0] == doctest::Approx(0.4));

  // saturated update gate: h == h_cand
  p.b_z[0] = 100.0;
  c = gru_step(p, DenseVector{0.8}, DenseVector{0.3});
  CHECK(std::fabs(c.h[0] - c.h_cand[0]) <= 1e-12);
  CHECK(c.h[0] == 0.0);
}

TEST_CASE("gru_step matches the scalar-loop oracle") {
  Rng rng(42);
  const CellParams p = init_params(CellKind::Gru, 3, 5, 2, 0.9, rng);
  const GruParams& g = std::get<GruParams>(p);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> h_prev(5), x(3);
    for (auto& v : h_prev) v = rng.uniform(-1.0, 1.0);
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);

    DenseVector hp(5), xv(3);
    hp.data = h_prev;
    xv.data = x;
    const StepCache c = gru_step(g, hp, xv);
    const GruOracleOut o = gru_step_oracle(g, h_prev, x);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::fabs(c.z[i] - o.z[i]) < 1e-12);
      CHECK(std::fabs(c.r[i] - o.r[i]) < 1e-12);
      CHECK(std::fabs(c.h_cand[i] - o.cand[i]) < 1e-12);
      CHECK(std::fabs(c.h[i] - o.h[i]) < 1e-12);
    }
  }
}

TEST_CASE("gru gates stay inside (0,1) and h is a convex mix") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Rng prng(trial);
    const CellParams p = init_params(CellKind::Gru, 2, 4, 1, 2.0, prng);
    const GruParams& g = std::get<GruParams>(p);
    DenseVector h_prev(4), x(2);
    for (auto& v : h_prev.data) v = rng.uniform(-3.0, 3.0);
    for (auto& v : x.data) v = rng.uniform(-3.0, 3.0);
    const StepCache c = gru_step(g, h_prev, x);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(c.z[i] > 0.0);
      CHECK(c.z[i] < 1.0);
      CHECK(c.r[i] > 0.0);
      CHECK(c.r[i] < 1.0);
      const double lo = std::min(h_prev[i], c.h_cand[i]);
      const double hi = std::max(h_prev[i], c.h_cand[i]);
      CHECK(c.h[i] >= lo);
      CHECK(c.h[i] <= hi);
    }
  }
}

TEST_CASE("step determinism: identical inputs, identical cache") {
  Rng rng(5);
  const CellParams p = init_params(CellKind::Gru, 2, 3, 1, 0.8, rng);
  const DenseVector h{0.1, -0.2, 0.3};
  const DenseVector x{0.5, 0.6};
  const StepCache a = cell_step(p, h, x);
  const StepCache b = cell_step(p, h, x);
  CHECK(a.h.data == b.h.data);
  CHECK(a.z.data == b.z.data);
  CHECK(a.r.data == b.r.data);
  CHECK(a.h_cand.data == b.h_cand.data);
}

TEST_CASE("output_project") {
  GruParams p = zero_gru(2, 3, 1);

  CHECK(output_project(CellParams{p}, DenseVector{1.0, 2.0, 3.0})[0] == 0.0);

  // row sum plus bias: [[1,1,1]] h + 0.5
  p.w_hy(0, 0) = 1.0;
  p.w_hy(0, 1) = 1.0;
  p.w_hy(0, 2) = 1.0;
  p.b_y[0] = 0.5;
  CHECK(output_project(CellParams{p}, DenseVector{1.0, 2.0, 3.0})[0] == 6.5);

  // identity projection (square case)
  GruParams sq = zero_gru(3, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) sq.w_hy(i, i) = 1.0;
  const DenseVector h{0.4, -0.1, 0.9};
  const DenseVector y = output_project(CellParams{sq}, h);
  CHECK(y.data == h.data);

  CHECK_THROWS_AS(output_project(CellParams{p}, DenseVector(5)), ShapeError);
}

TEST_CASE("step shape mismatches are rejected") {
  Rng rng(9);
  const CellParams p = init_params(CellKind::Gru, 2, 3, 1, 0.5, rng);
  const GruParams& g = std::get<GruParams>(p);
  CHECK_THROWS_AS(gru_step(g, DenseVector(3), DenseVector(4)), ShapeError);
  CHECK_THROWS_AS(gru_step(g, DenseVector(2), DenseVector(2)), ShapeError);
}
