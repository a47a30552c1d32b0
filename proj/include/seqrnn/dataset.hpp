#pragma once

#include <cstdint>
#include <vector>

#include "seqrnn/linalg.hpp"

namespace seqrnn {

// One supervised sequence: T x D_in inputs, T x D_out targets, and a
// per-step mask; mask[t] == 0 marks steps whose target is undefined and
// therefore excluded from the loss.
struct Sequence {
  DenseMatrix inputs;
  DenseMatrix targets;
  std::vector<std::uint8_t> mask;
};

struct SeriesDataset {
  std::vector<Sequence> sequences;

  std::size_t d_in() const { return sequences.empty() ? 0 : sequences[0].inputs.cols; }
  std::size_t d_out() const { return sequences.empty() ? 0 : sequences[0].targets.cols; }
};

}  // namespace seqrnn
