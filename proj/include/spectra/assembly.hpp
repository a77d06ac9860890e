#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/approx.hpp"
#include "spectra/reads.hpp"
#include "spectra/sequence.hpp"

namespace spectra {

/// A placement of every read at a genome position.
struct Assembly {
  std::vector<std::size_t> sigma;   ///< sigma[read index] = start position
  bool consistent = false;
  std::vector<std::size_t> columns; ///< erasures per genome position
};

struct ConsistencyResult {
  bool consistent = false;
  std::optional<Assembly> assembly;
};

struct SearchOptions {
  /// When set, classes of identical reads are tried in a seeded random order
  /// instead of lexicographic order, which may find a different assembly.
  std::optional<std::uint64_t> shuffle_seed;
  /// Search nodes before giving up.
  std::uint64_t max_nodes = 20'000'000;
};

/// Is there a bijection of reads to positions of `candidate` with every read
/// erasure-compatible with its window and at most D erasures per column?
/// Throws InvalidArgument when the read count differs from the candidate
/// length or L exceeds it; InfeasibleError when the node budget runs out.
ConsistencyResult check_consistency(const CircularSequence& candidate, const ReadSet& reads,
                                    std::size_t D, const SearchOptions& options = {});

struct FoundAssembly {
  Assembly assembly;
  CircularSequence consensus;
};

/// Some consistent assembly and its consensus. Reads are placed left to right
/// with the first class of identical reads pinned at position 0; classes are
/// tried in lexicographic order (or the shuffle_seed order), and identical
/// reads take positions in input order. An attempt that runs past its node
/// slice is restarted in a reshuffled order with a doubled slice until
/// max_nodes is spent; the result is a function of the inputs and options.
/// Throws NoConsistentAssembly if none exists or the budget runs out,
/// InvalidArgument when D >= L or L > G.
FoundAssembly find_consistent_assembly(const ReadSet& reads, std::size_t D,
                                       const SearchOptions& options = {});

/// Column-wise agreed symbols of an assembly. Throws InvalidArgument when a
/// column disagrees, holds more than D erasures, or is fully erased.
CircularSequence consensus_sequence(const Assembly& assembly, const ReadSet& reads, std::size_t D);

struct CorrectedSpectrum {
  std::size_t k = 0;
  std::vector<std::string> spectrum; ///< the (k+1)-windows of the consensus, sorted
  CircularSequence consensus;
  bool guaranteed = false;           ///< L > k + D * M_hi(consensus, D, k+1)
  MBound m;                          ///< M(D, k+1) of the consensus
  std::vector<std::string> warnings;
};

/// Finds a consistent assembly and returns the (k+1)-spectrum of its
/// consensus, checking the correction hypothesis against the consensus.
/// Requires k + 1 <= L.
CorrectedSpectrum correct_spectrum(const ReadSet& reads, std::size_t D, std::size_t k,
                                   const SearchOptions& options = {},
                                   const ApproxConfig& config = {});

/// M(d, l) of a sequence: exact when the exact engine can afford it,
/// otherwise the bracket.
MBound best_available_bound(const ApproxRepeatAnalyzer& analyzer, std::size_t d,
                            std::size_t length);

} // namespace spectra
