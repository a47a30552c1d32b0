#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "seqrnn/errors.hpp"
#include "seqrnn/toytask.hpp"
#include "seqrnn/training.hpp"

using namespace seqrnn;

namespace {

// Same masking pipeline as the delayed-sum task but with a memory-free
// target, y_t = x_t[0] + x_t[1]; used as a control experiment.
SeriesDataset zero_delay_dataset(std::size_t n_seq, std::size_t t_len, Rng rng) {
  SeriesDataset ds;
  for (std::size_t s = 0; s < n_seq; ++s) {
    Rng sr = rng.stream(s);
    Sequence q;
    q.inputs = DenseMatrix(t_len, 2);
    for (double& x : q.inputs.data) x = sr.next_double();
    q.targets = DenseMatrix(t_len, 1);
    q.mask.assign(t_len, 0);
    for (std::size_t t = 5; t < t_len; ++t) {
      q.targets(t, 0) = q.inputs(t, 0) + q.inputs(t, 1);
      q.mask[t] = 1;
    }
    ds.sequences.push_back(std::move(q));
  }
  return ds;
}

}  // namespace

TEST_CASE("mse_step_loss") {
  CHECK(mse_step_loss(DenseVector{0.3, -0.4}, DenseVector{0.3, -0.4}) == 0.0);
  CHECK(mse_step_loss(DenseVector{1.0, 1.0, 1.0, 1.0}, DenseVector(4)) == 1.0);
  CHECK(mse_step_loss(DenseVector{2.0, 0.0}, DenseVector(2)) == 2.0);
  CHECK_THROWS_AS(mse_step_loss(DenseVector(2), DenseVector(3)), ShapeError);
}

TEST_CASE("sgd_update") {
  Rng rng(1);
  CellParams p = init_params(CellKind::Tanh, 1, 1, 1, 0.5, rng);
  std::get<TanhParams>(p).w_xh(0, 0) = 2.0;

  SUBCASE("zero gradient leaves params unchanged") {
    const CellParams before = p;
    sgd_update(p, zero_gradients_like(p), 0.7);
    std::vector<double> a, b;
    for_each_array(before, [&](const char*, const auto& arr) {
      a.insert(a.end(), arr.flat().begin(), arr.flat().end());
    });
    for_each_array(p, [&](const char*, const auto& arr) {
      b.insert(b.end(), arr.flat().begin(), arr.flat().end());
    });
    CHECK(a == b);
  }

  SUBCASE("one-step arithmetic") {
    Gradients g = zero_gradients_like(p);
    std::get<TanhParams>(g).w_xh(0, 0) = 0.5;
    sgd_update(p, g, 1.0);
    CHECK(std::get<TanhParams>(p).w_xh(0, 0) == 1.5);
  }

  SUBCASE("two updates with fixed g equal one update at doubled lr") {
    CellParams q = p;
    Gradients g = zero_gradients_like(p);
    std::get<TanhParams>(g).w_xh(0, 0) = 0.3;
    std::get<TanhParams>(g).b_y[0] = -0.2;
    sgd_update(p, g, 0.1);
    sgd_update(p, g, 0.1);
    sgd_update(q, g, 0.2);
    CHECK(std::get<TanhParams>(p).w_xh(0, 0) ==
          doctest::Approx(std::get<TanhParams>(q).w_xh(0, 0)).epsilon(1e-15));
    CHECK(std::get<TanhParams>(p).b_y[0] ==
          doctest::Approx(std::get<TanhParams>(q).b_y[0]).epsilon(1e-15));
  }

  SUBCASE("rejects bad arguments") {
    Rng r2(2);
    const Gradients wrong = zero_gradients_like(init_params(CellKind::Gru, 1, 1, 1, 0.5, r2));
    CHECK_THROWS_AS(sgd_update(p, wrong, 0.1), ShapeError);
    CHECK_THROWS_AS(sgd_update(p, zero_gradients_like(p), 0.0), ShapeError);
  }
}

TEST_CASE("train: epochs=1 with tiny lr keeps params at init") {
  // lr must be > 0; with a denormal lr the update is a no-op in effect.
  const SeriesDataset ds = generate_toy_dataset(5, 10, Rng(4));
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.learning_rate = 1e-300;
  cfg.hidden = 4;
  const TrainResult r = train(ds, cfg);
  CHECK(r.report.loss_curve.size() == 1);
  CHECK(r.report.final_loss == r.report.loss_curve[0]);

  Rng rng(cfg.seed);
  const CellParams init = init_params(CellKind::Gru, 2, 4, 1,
                                      default_init_scale(4), rng);
  std::vector<double> a, b;
  for_each_array(init, [&](const char*, const auto& arr) {
    a.insert(a.end(), arr.flat().begin(), arr.flat().end());
  });
  for_each_array(r.params, [&](const char*, const auto& arr) {
    b.insert(b.end(), arr.flat().begin(), arr.flat().end());
  });
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12));
  }
}

TEST_CASE("train: loss curve length, determinism, descent guard") {
  const SeriesDataset ds = generate_toy_dataset(30, 20, Rng(8));
  TrainConfig cfg;
  cfg.epochs = 120;
  cfg.hidden = 5;
  cfg.seed = 11;
  const TrainResult r1 = train(ds, cfg);
  const TrainResult r2 = train(ds, cfg);
  CHECK(r1.report.loss_curve.size() == 120);
  CHECK(r1.report.loss_curve == r2.report.loss_curve);  // bit-identical
  CHECK(r1.report.final_loss == r1.report.loss_curve.back());
  for (double l : r1.report.loss_curve) CHECK(l >= 0.0);
}

TEST_CASE("train: small-lr runs descend monotone-ish after epoch 50") {
  const SeriesDataset ds = generate_toy_dataset(40, 20, Rng(5));
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.learning_rate = 1e-3;
  const TrainResult r = train(ds, cfg);
  for (std::size_t e = 50; e + 1 < r.report.loss_curve.size(); ++e) {
    CHECK(r.report.loss_curve[e + 1] <= 1.1 * r.report.loss_curve[e]);
  }
}

TEST_CASE("train rejects invalid configs and empty datasets") {
  const SeriesDataset ds = generate_toy_dataset(2, 10, Rng(1));
  TrainConfig cfg;
  cfg.epochs = 0;
  CHECK_THROWS_AS(train(ds, cfg), ShapeError);
  cfg.epochs = 1;
  cfg.learning_rate = -1.0;
  CHECK_THROWS_AS(train(ds, cfg), ShapeError);
  CHECK_THROWS_AS(train(SeriesDataset{}, TrainConfig{}), ShapeError);
}

TEST_CASE("compare_cells is deterministic and reports the final-loss ratio") {
  const SeriesDataset ds = generate_toy_dataset(20, 20, Rng(13));
  TrainConfig cfg;
  cfg.epochs = 60;
  cfg.hidden = 5;
  const CellComparison a = compare_cells(ds, cfg);
  const CellComparison b = compare_cells(ds, cfg);
  CHECK(a.gru.report.loss_curve == b.gru.report.loss_curve);
  CHECK(a.tanh.report.loss_curve == b.tanh.report.loss_curve);
  CHECK(a.final_loss_ratio ==
        a.gru.report.final_loss / a.tanh.report.final_loss);
  CHECK(kind_of(a.gru.params) == CellKind::Gru);
  CHECK(kind_of(a.tanh.params) == CellKind::Tanh);
}

TEST_CASE("control experiment: memory-free variant is learnable by both cells") {
  const SeriesDataset ds = zero_delay_dataset(100, 20, Rng(42));
  TrainConfig cfg;
  cfg.epochs = 500;
  cfg.learning_rate = 0.02;
  const CellComparison cmp = compare_cells(ds, cfg);
  CHECK(cmp.gru.report.final_loss <= 1e-2);
  CHECK(cmp.tanh.report.final_loss <= 1e-2);
}

TEST_CASE("forward trace of a trained toy model has 20 steps, first 5 masked") {
  const SeriesDataset ds = generate_toy_dataset(10, 20, Rng(6));
  TrainConfig cfg;
  cfg.epochs = 40;
  cfg.hidden = 5;
  const TrainResult r = train(ds, cfg);
  const Sequence& q = ds.sequences[0];
  const ForwardTrace trace = forward_sequence(r.params, q.inputs, q.targets, q.mask);
  CHECK(trace.steps.size() == 20);
  for (std::size_t t = 0; t < 5; ++t) CHECK(trace.per_step_loss[t] == 0.0);
  double masked_sum = 0.0;
  for (std::size_t t = 5; t < 20; ++t) {
    CHECK(trace.per_step_loss[t] >= 0.0);
    masked_sum += trace.per_step_loss[t];
  }
  CHECK(trace.total_loss == doctest::Approx(masked_sum / 15.0).epsilon(1e-12));
}

TEST_CASE("report JSON carries config echo, curve, final loss and wall time") {
  const SeriesDataset ds = generate_toy_dataset(5, 10, Rng(2));
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.hidden = 3;
  cfg.cell = CellKind::Tanh;
  const TrainResult r = train(ds, cfg);
  const auto j = nlohmann::json::parse(report_to_json(r.report));
  CHECK(j["config"]["cell"] == "tanh");
  CHECK(j["config"]["epochs"] == 3);
  CHECK(j["config"]["hidden"] == 3);
  CHECK(j["config"]["seed"] == 42);
  CHECK(j["loss_curve"].size() == 3);
  CHECK(j["final_loss"].get<double>() == r.report.final_loss);
  CHECK(j["wall_time_s"].get<double>() >= 0.0);
}
