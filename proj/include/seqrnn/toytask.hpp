#pragma once

#include "seqrnn/dataset.hpp"
#include "seqrnn/rng.hpp"

namespace seqrnn {

// Delayed-sum memory benchmark: 2 input columns of uniform [0,1) noise,
// scalar target y_t = xs[t-3][0] + xs[t-5][1] for t >= 5 (0-based), steps
// t < 5 masked out. Requires t >= 5; throws otherwise.
double delayed_sum_target(const DenseMatrix& xs, std::size_t t);

// n_seq sequences of t_len steps each, D_in=2, D_out=1. Each sequence is
// drawn from its own child stream of rng (stream index = sequence index),
// so regeneration is bit-identical regardless of evaluation order.
// t_len must be > 5 or no supervised step would exist.
SeriesDataset generate_toy_dataset(std::size_t n_seq, std::size_t t_len, Rng rng);

}  // namespace seqrnn
