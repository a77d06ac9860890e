#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/sequence.hpp"

namespace spectra {
class ReadSet;
}

/// Slow brute-force references. Nothing here shares code with the engines
/// beyond the sequence primitives, so disagreements are meaningful.
namespace spectra::oracle {

struct OracleBudget {
  std::size_t max_G = 64;
  std::size_t max_alphabet = 4;
  std::uint64_t max_center_space = 65536;       ///< |alphabet|^l for exact_center_M
  std::uint64_t max_candidates = 1ULL << 20;    ///< |alphabet|^G for enumerate_consistent
  std::size_t max_edges = 10'000;               ///< de Bruijn edges for enumerate_eulerian
  std::uint64_t max_search_nodes = 50'000'000;  ///< DFS steps, any oracle

  /// Defaults overridden by SPECTRA_ORACLE_BUDGET, a comma separated list of
  /// key=value pairs using the field names above (e.g. "max_G=96,max_edges=20000").
  static OracleBudget from_environment();
  /// Applies key=value pairs; throws InvalidArgument on unknown keys or bad values.
  void apply(std::string_view spec);
};

/// l_crit by direct enumeration: all maximal pairs by window comparison,
/// then every pair of pairs under every representative ordering.
std::size_t brute_lcrit(const CircularSequence& seq, const OracleBudget& budget = {});

/// Longest interleaved repeat length (brute_lcrit - 1).
std::size_t brute_linter(const CircularSequence& seq, const OracleBudget& budget = {});

/// Maximal repeat pairs (pos1 < pos2) by direct window comparison.
struct BrutePair {
  std::size_t pos1, pos2, length;
  friend bool operator==(const BrutePair&, const BrutePair&) = default;
  friend auto operator<=>(const BrutePair&, const BrutePair&) = default;
};
std::vector<BrutePair> brute_maximal_repeats(const CircularSequence& seq,
                                             const OracleBudget& budget = {});

/// M(d, l) by enumerating every center in ACGT^l.
std::size_t exact_center_M(const CircularSequence& seq, std::size_t d, std::size_t length,
                           const OracleBudget& budget = {});

/// Independent consistency test of one candidate against a read set.
bool is_consistent(std::string_view candidate, const std::vector<std::string>& reads,
                   std::size_t D, const OracleBudget& budget = {});

/// Every sequence over `alphabet` of length G (one per rotation class,
/// returned as least rotations, sorted) consistent with the reads.
std::vector<std::string> enumerate_consistent(const ReadSet& reads, std::size_t D,
                                              std::string_view alphabet, std::size_t G,
                                              const OracleBudget& budget = {});

/// Sequences spelled by Eulerian cycles of the de Bruijn multigraph of an
/// l-spectrum, deduplicated by rotation class (least rotations, sorted).
/// Stops early once `max_classes` classes are known (0 = no limit).
std::vector<std::string> enumerate_eulerian(const std::vector<std::string>& spectrum,
                                            std::size_t max_classes = 0,
                                            const OracleBudget& budget = {});

/// Perfect matching in the bipartite graph joining u (truth) and v
/// (candidate) when their length-(k+1) windows are equal.
bool hall_matching_check(const CircularSequence& truth, const CircularSequence& candidate,
                         std::size_t k, const OracleBudget& budget = {});

} // namespace spectra::oracle
