#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/sequence.hpp"

namespace spectra {

/// Two or more different sequences (canonical rotations) spelled by Eulerian
/// cycles of the same de Bruijn graph.
struct AmbiguityReport {
  std::vector<CircularSequence> reconstructions;
  std::string move; ///< "rotation" or "transposition"
};

struct NoiselessAssembly {
  std::optional<CircularSequence> sequence; ///< set when the reconstruction is unique
  std::optional<AmbiguityReport> ambiguity;
  bool unique() const noexcept { return sequence.has_value(); }
};

struct DeBruijnOptions {
  /// Alternative cycles examined before the uniqueness check gives up.
  std::uint64_t max_moves = 5'000'000;
};

/// Builds the de Bruijn multigraph on (l-1)-mers with one edge per spectrum
/// element and spells an Eulerian cycle. The reconstruction is unique unless
/// some rotation (a node visited three times) or transposition (two
/// interleaved repeated nodes) of that cycle spells a different sequence.
/// Throws InvalidArgument when the strings differ in length, the graph is
/// unbalanced or not connected; InfeasibleError when max_moves runs out.
NoiselessAssembly assemble_noiseless(const std::vector<std::string>& spectrum,
                                     const DeBruijnOptions& options = {});

} // namespace spectra
