#pragma once

#include <cstdint>
#include <vector>

#include "seqrnn/cells.hpp"
#include "seqrnn/linalg.hpp"

namespace seqrnn {

// Per-timestep cache of one forward pass, plus the masked loss breakdown.
// steps[t].h_prev == steps[t-1].h for every t >= 1.
struct ForwardTrace {
  std::vector<StepCache> steps;
  std::vector<double> per_step_loss;  // 0 where masked out
  double total_loss = 0.0;            // mean over unmasked steps
};

// Runs the cell and output projection over xs (T x D_in) from h_0 = 0.
// per_step_loss[t] is the squared error of step t averaged over output
// dimensions, or 0 where mask[t] is 0; total_loss is the mean over
// unmasked steps. mask must contain at least one nonzero entry.
ForwardTrace forward_sequence(const CellParams& p, const DenseMatrix& xs,
                              const DenseMatrix& ys_target,
                              const std::vector<std::uint8_t>& mask);

// Exact analytic d(total_loss)/d(theta), accumulated through all T steps
// including both the direct and the recurrent paths of the gates.
Gradients backward_sequence(const CellParams& p, const ForwardTrace& trace,
                            const DenseMatrix& xs, const DenseMatrix& ys_target,
                            const std::vector<std::uint8_t>& mask);

// Central finite differences, (L(t+eps) - L(t-eps)) / (2 eps) per scalar
// parameter, each L from a fresh forward pass. Verification oracle for
// backward_sequence; validated for eps in [1e-7, 1e-3].
Gradients finite_difference_grads(const CellParams& p, const DenseMatrix& xs,
                                  const DenseMatrix& ys_target,
                                  const std::vector<std::uint8_t>& mask,
                                  double eps);

// Global-norm clipping: if the L2 norm over every entry exceeds the
// threshold, all entries are scaled by threshold/norm. Direction is
// preserved and the operation is (numerically) idempotent.
Gradients clip_gradients(Gradients g, double threshold);

Gradients zero_gradients_like(const CellParams& p);
void accumulate_gradients(Gradients& into, const Gradients& g);
double gradient_norm(const Gradients& g);

}  // namespace seqrnn
