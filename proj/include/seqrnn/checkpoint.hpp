#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "seqrnn/cells.hpp"
#include "seqrnn/motion.hpp"

namespace seqrnn {

inline constexpr int kCheckpointFormatVersion = 1;

struct LoadedCheckpoint {
  CellParams params;
  std::optional<NormStats> norm;
  std::uint64_t seed_provenance = 0;
};

// JSON checkpoint. Keys are sorted, doubles serialize to exact round-trip
// decimal, so identical params always produce identical bytes. Schema:
//   {"format_version": 1, "cell": "gru"|"tanh",
//    "dims": {"d_in": .., "hidden": .., "d_out": ..},
//    "arrays": {name: {"shape": [..], "data": [..]}, ...},
//    "norm": {"mean": [..], "std": [..]},   // optional
//    "seed_provenance": u64}
void save_checkpoint(const CellParams& p, const std::optional<NormStats>& norm,
                     std::uint64_t seed_provenance, const std::string& path);

// Validates version, cell kind, and every array shape before returning.
LoadedCheckpoint load_checkpoint(const std::string& path);

}  // namespace seqrnn
