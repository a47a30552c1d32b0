#pragma once

#include <cstdint>
#include <string>

#include "seqrnn/cells.hpp"
#include "seqrnn/dataset.hpp"
#include "seqrnn/engine.hpp"

namespace seqrnn {

struct TrainConfig {
  double learning_rate = 0.05;
  std::int64_t epochs = 2000;
  double clip_threshold = 5.0;
  std::uint64_t seed = 42;
  CellKind cell = CellKind::Gru;
  std::int64_t hidden = 7;
  double init_scale = 0.0;  // <= 0 selects 1/sqrt(hidden)
  std::int64_t log_every = 0;  // 0 = silent
};

struct TrainReport {
  std::vector<double> loss_curve;  // one entry per epoch
  double final_loss = 0.0;
  double wall_time_s = 0.0;
  TrainConfig config;
};

struct TrainResult {
  CellParams params;
  TrainReport report;
};

struct CellComparison {
  TrainResult gru;
  TrainResult tanh;
  double final_loss_ratio = 0.0;  // gru final / tanh final
};

// Mean over dimensions of (y[i] - target[i])^2.
double mse_step_loss(const DenseVector& y, const DenseVector& target);

// theta -= lr * g, elementwise across every parameter array.
void sgd_update(CellParams& p, const Gradients& g, double lr);

// Full-batch training: per epoch, gradients of all sequences are summed,
// clipped by global norm, and applied in a single SGD step. loss_curve[e]
// is the mean over sequences of that epoch's pre-update loss. Aborts with
// NumericError naming the epoch if the loss becomes non-finite.
TrainResult train(const SeriesDataset& dataset, const TrainConfig& cfg);

// Trains both cell kinds with an identical config (seed included) and
// reports the final-loss ratio gru/tanh.
CellComparison compare_cells(const SeriesDataset& dataset, const TrainConfig& base);

// {"config": {...}, "loss_curve": [...], "final_loss": x, "wall_time_s": x}
std::string report_to_json(const TrainReport& report);
void write_report_json(const TrainReport& report, const std::string& path);

const char* cell_kind_name(CellKind kind);

}  // namespace seqrnn
