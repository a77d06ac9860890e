#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spectra/sequence.hpp"
#include "spectra/suffix_array.hpp"

namespace spectra {

/// Two occurrences of the same window that cannot be extended on either side
/// while staying equal: s[pos1-1] != s[pos2-1] and s[pos1+length] != s[pos2+length].
/// Positions are in [0, G) with pos1 < pos2.
struct RepeatPair {
  std::size_t pos1 = 0;
  std::size_t pos2 = 0;
  std::size_t length = 0;

  friend bool operator==(const RepeatPair&, const RepeatPair&) = default;
};

/// Two repeat pairs with integer representatives a1 < b1 <= a2 < b2 and
/// b2 - a1 < G. Representatives may exceed G - 1; a1 is always in [0, G).
struct InterleavedWitness {
  RepeatPair pair_a;
  RepeatPair pair_b;
  std::size_t a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  std::size_t length = 0; ///< min(pair_a.length, pair_b.length)
};

struct RepeatReport {
  std::size_t l_inter = 0;
  std::size_t l_crit = 1;
  std::optional<InterleavedWitness> witness;
  std::vector<std::string> warnings;
};

/// Repeat-structure queries over one sequence. Builds the circular suffix
/// array once; every query after that is linear or output-sensitive.
class RepeatIndex {
public:
  explicit RepeatIndex(const CircularSequence& seq);

  const CircularSequence& sequence() const noexcept { return seq_; }
  const CircularSuffixArray& suffix_array() const noexcept { return sa_; }

  /// All maximal repeat pairs of length >= min_length, sorted by (pos1, pos2).
  /// The output is quadratic in the number of occurrences of repeated
  /// substrings, so genome-scale callers should raise min_length.
  std::vector<RepeatPair> maximal_repeats(std::size_t min_length = 1) const;

  /// True iff some pair of interleaved repeats has min length >= m.
  bool has_interleaved(std::size_t m) const;

  /// Longest interleaved repeat length, with a witness. Among witnesses the
  /// one with the smallest (a1, b1) is reported whenever the number of repeat
  /// pairs of the final length is small enough to enumerate.
  RepeatReport interleaved() const;

  /// For every threshold t in [0, G], the largest number of positions whose
  /// length-t windows coincide (entry 0 is G). This is M(0, t).
  std::vector<std::size_t> exact_multiplicity_profile() const;

  /// lcp of rotations starting at i and j (capped at G).
  std::size_t lcp(std::size_t i, std::size_t j) const;

private:
  struct Chord {
    std::size_t x, y; // x < y
  };
  // Chords (maximal repeat pairs) of length >= m, or std::nullopt when two of
  // them share an endpoint; the first shared pair is stored in *shared.
  bool sharing_or_chords(std::size_t m, std::vector<Chord>& chords,
                         std::optional<std::pair<Chord, Chord>>* shared) const;
  std::optional<std::pair<Chord, Chord>> crossing_pair(std::vector<Chord> chords) const;
  InterleavedWitness make_witness(Chord p, Chord q) const;

  CircularSequence seq_;
  CircularSuffixArray sa_;
};

/// Convenience wrappers building a RepeatIndex internally.
std::vector<RepeatPair> maximal_repeats(const CircularSequence& seq, std::size_t min_length = 1);
RepeatReport interleaved_length(const CircularSequence& seq);
std::size_t l_crit(const CircularSequence& seq);

/// Given two repeat pairs, the representative assignment with a1 < b1 <= a2 < b2,
/// b2 - a1 < G and the smallest (a1, b1), if any exists.
std::optional<InterleavedWitness> interleave(const RepeatPair& p, const RepeatPair& q,
                                             std::size_t genome_length);

} // namespace spectra
