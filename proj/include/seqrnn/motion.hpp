#pragma once

#include <optional>
#include <string>

#include "seqrnn/cells.hpp"
#include "seqrnn/dataset.hpp"
#include "seqrnn/rng.hpp"
#include "seqrnn/training.hpp"

namespace seqrnn {

// Per-column normalization statistics. std uses the population formula
// (divide by T); constant columns get std clamped to 1 with a warning so
// real exports with frozen features still load.
struct NormStats {
  DenseVector mean;
  DenseVector stddev;
};

struct MotionDataset {
  DenseMatrix frames;  // T x D
  std::optional<NormStats> norm;  // set after normalize()
};

struct GenerationRun {
  DenseMatrix seed_source;  // the frames the model was seeded with
  DenseMatrix generated;    // gen_len x D
  std::size_t seed_frames() const { return seed_source.rows; }
};

struct MotionTrainResult {
  CellParams params;
  NormStats norm;
  TrainReport report;
};

// Rectangular numeric CSV, comma separated, optional single header row
// (auto-detected: first row fails numeric parse). Ragged rows, non-numeric
// cells and empty files are rejected with distinct messages naming the row.
MotionDataset load_csv(const std::string& path);

NormStats fit_normalizer(const MotionDataset& d);
MotionDataset normalize(const MotionDataset& d, const NormStats& s);
MotionDataset denormalize(const MotionDataset& d, const NormStats& s);

// Walking-like stand-in: column j is a_j sin(2 pi f_j i / t + phi_j) plus
// N(0, 0.01^2) noise, with integer f_j in {1..6} cycles, phase in [0, 2 pi)
// and amplitude in [0.5, 1.5], all drawn from per-column child streams.
MotionDataset synthesize_benchmark_motion(std::size_t t, std::size_t d, Rng rng);

// Next-frame prediction wiring: one sequence with inputs = frames, target
// at step t = frame t+1, and the final step masked out. Needs T >= 2.
SeriesDataset next_frame_dataset(const DenseMatrix& frames);

// Teacher-forces the seed frames (outputs discarded), then free-runs:
// each output is fed back as the next input. generated[0] is the
// projection of the hidden state after the last seed frame. Aborts with
// NumericError naming the step if a non-finite value appears.
GenerationRun seed_and_generate(const CellParams& p, const DenseMatrix& seed_frames,
                                std::size_t gen_len);

// Per-row mean across features; the single-trace visualization summary.
std::vector<double> feature_average_trace(const DenseMatrix& frames);

// Fit stats, normalize, train next-frame prediction with cfg.
MotionTrainResult train_motion(const MotionDataset& d, const TrainConfig& cfg);

}  // namespace seqrnn
