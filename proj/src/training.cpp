#include "seqrnn/training.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "seqrnn/errors.hpp"

namespace seqrnn {

namespace {

void validate_config(const TrainConfig& cfg) {
  if (!(cfg.learning_rate > 0.0)) throw ShapeError("train: learning_rate must be > 0");
  if (cfg.epochs < 1) throw ShapeError("train: epochs must be >= 1");
  if (!(cfg.clip_threshold > 0.0)) throw ShapeError("train: clip_threshold must be > 0");
  if (cfg.hidden < 1) throw ShapeError("train: hidden must be >= 1");
}

void validate_dataset(const SeriesDataset& ds) {
  if (ds.sequences.empty()) throw ShapeError("train: dataset is empty");
  const std::size_t d_in = ds.sequences[0].inputs.cols;
  const std::size_t d_out = ds.sequences[0].targets.cols;
  for (std::size_t s = 0; s < ds.sequences.size(); ++s) {
    const Sequence& q = ds.sequences[s];
    if (q.inputs.cols != d_in || q.targets.cols != d_out ||
        q.inputs.rows != q.targets.rows || q.mask.size() != q.inputs.rows) {
      throw ShapeError("train: sequence " + std::to_string(s) +
                       " is shape-inconsistent with the dataset");
    }
  }
}

}  // namespace

double mse_step_loss(const DenseVector& y, const DenseVector& target) {
  if (y.len() != target.len()) {
    throw ShapeError("mse_step_loss: lengths differ (" + std::to_string(y.len()) +
                     " vs " + std::to_string(target.len()) + ")");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < y.len(); ++i) {
    const double d = y[i] - target[i];
    sum += d * d;
  }
  return sum / static_cast<double>(y.len());
}

void sgd_update(CellParams& p, const Gradients& g, double lr) {
  if (!(lr > 0.0)) throw ShapeError("sgd_update: lr must be > 0");
  if (kind_of(p) != kind_of(g)) throw ShapeError("sgd_update: cell kinds differ");
  std::vector<std::span<double>> dst;
  std::vector<std::span<const double>> src;
  for_each_array(p, [&](const char*, auto& arr) { dst.push_back(arr.flat()); });
  for_each_array(g, [&](const char*, const auto& arr) { src.push_back(arr.flat()); });
  for (std::size_t a = 0; a < dst.size(); ++a) {
    if (dst[a].size() != src[a].size()) {
      throw ShapeError("sgd_update: gradient shapes do not match parameters");
    }
    for (std::size_t i = 0; i < dst[a].size(); ++i) dst[a][i] -= lr * src[a][i];
  }
}

TrainResult train(const SeriesDataset& dataset, const TrainConfig& cfg) {
  validate_config(cfg);
  validate_dataset(dataset);

  const auto t0 = std::chrono::steady_clock::now();
  const double scale = cfg.init_scale > 0.0
                           ? cfg.init_scale
                           : default_init_scale(static_cast<std::size_t>(cfg.hidden));
  Rng rng(cfg.seed);
  CellParams params = init_params(cfg.cell, dataset.d_in(),
                                  static_cast<std::size_t>(cfg.hidden),
                                  dataset.d_out(), scale, rng);

  TrainReport report;
  report.config = cfg;
  report.loss_curve.reserve(static_cast<std::size_t>(cfg.epochs));

  const double inv_n = 1.0 / static_cast<double>(dataset.sequences.size());
  for (std::int64_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Gradients total = zero_gradients_like(params);
    double loss_sum = 0.0;
    for (const Sequence& seq : dataset.sequences) {
      ForwardTrace trace = forward_sequence(params, seq.inputs, seq.targets, seq.mask);
      loss_sum += trace.total_loss;
      accumulate_gradients(total,
                           backward_sequence(params, trace, seq.inputs, seq.targets, seq.mask));
    }
    const double epoch_loss = loss_sum * inv_n;
    if (!std::isfinite(epoch_loss)) {
      throw NumericError("training diverged at epoch " + std::to_string(epoch) +
                         ": loss is not finite");
    }
    report.loss_curve.push_back(epoch_loss);
    if (cfg.log_every > 0 && epoch % cfg.log_every == 0) {
      std::cerr << "epoch " << epoch << "  loss " << epoch_loss << "\n";
    }
    total = clip_gradients(std::move(total), cfg.clip_threshold);
    sgd_update(params, total, cfg.learning_rate);
  }

  report.final_loss = report.loss_curve.back();
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(params), std::move(report)};
}

CellComparison compare_cells(const SeriesDataset& dataset, const TrainConfig& base) {
  TrainConfig gru_cfg = base;
  gru_cfg.cell = CellKind::Gru;
  TrainConfig tanh_cfg = base;
  tanh_cfg.cell = CellKind::Tanh;

  CellComparison cmp;
  cmp.gru = train(dataset, gru_cfg);
  cmp.tanh = train(dataset, tanh_cfg);
  cmp.final_loss_ratio = cmp.gru.report.final_loss / cmp.tanh.report.final_loss;
  return cmp;
}

const char* cell_kind_name(CellKind kind) {
  return kind == CellKind::Tanh ? "tanh" : "gru";
}

std::string report_to_json(const TrainReport& report) {
  nlohmann::json j;
  j["config"] = {
      {"cell", cell_kind_name(report.config.cell)},
      {"learning_rate", report.config.learning_rate},
      {"epochs", report.config.epochs},
      {"clip_threshold", report.config.clip_threshold},
      {"seed", report.config.seed},
      {"hidden", report.config.hidden},
      {"init_scale", report.config.init_scale},
      {"log_every", report.config.log_every},
  };
  j["loss_curve"] = report.loss_curve;
  j["final_loss"] = report.final_loss;
  j["wall_time_s"] = report.wall_time_s;
  return j.dump(2);
}

void write_report_json(const TrainReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << report_to_json(report) << "\n";
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace seqrnn
