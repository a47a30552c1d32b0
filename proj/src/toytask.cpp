#include "seqrnn/toytask.hpp"

#include <string>

#include "seqrnn/errors.hpp"

namespace seqrnn {

namespace {
constexpr std::size_t kDelayLong = 5;   // column 1 lag
constexpr std::size_t kDelayShort = 3;  // column 0 lag
}  // namespace

double delayed_sum_target(const DenseMatrix& xs, std::size_t t) {
  if (xs.cols != 2) {
    throw ShapeError("delayed_sum_target: inputs must have 2 columns, got " +
                     std::to_string(xs.cols));
  }
  if (t < kDelayLong) {
    throw ShapeError("delayed_sum_target: target undefined for t=" +
                     std::to_string(t) + " (needs t >= 5)");
  }
  if (t >= xs.rows) {
    throw ShapeError("delayed_sum_target: t=" + std::to_string(t) +
                     " out of range for " + std::to_string(xs.rows) + " steps");
  }
  return xs(t - kDelayShort, 0) + xs(t - kDelayLong, 1);
}

SeriesDataset generate_toy_dataset(std::size_t n_seq, std::size_t t_len, Rng rng) {
  if (n_seq < 1) throw ShapeError("generate_toy_dataset: n_seq must be >= 1");
  if (t_len <= kDelayLong) {
    throw ShapeError("generate_toy_dataset: t_len=" + std::to_string(t_len) +
                     " leaves no supervised step (needs t_len > 5)");
  }
  SeriesDataset ds;
  ds.sequences.reserve(n_seq);
  for (std::size_t s = 0; s < n_seq; ++s) {
    Rng seq_rng = rng.stream(s);
    Sequence seq;
    seq.inputs = DenseMatrix(t_len, 2);
    for (std::size_t t = 0; t < t_len; ++t) {
      seq.inputs(t, 0) = seq_rng.next_double();
      seq.inputs(t, 1) = seq_rng.next_double();
    }
    seq.targets = DenseMatrix(t_len, 1);
    seq.mask.assign(t_len, 0);
    for (std::size_t t = kDelayLong; t < t_len; ++t) {
      seq.targets(t, 0) = delayed_sum_target(seq.inputs, t);
      seq.mask[t] = 1;
    }
    ds.sequences.push_back(std::move(seq));
  }
  return ds;
}

}  // namespace seqrnn
