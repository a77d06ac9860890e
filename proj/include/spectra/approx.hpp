#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spectra/repeats.hpp"
#include "spectra/sequence.hpp"

namespace spectra {

enum class ApproxMode { exact, bracket };

/// Bounds on M(d, l): the largest number of window positions whose length-l
/// windows all lie within Hamming distance d of one common center string.
struct MBound {
  std::size_t d = 0;
  std::size_t length = 0;
  std::size_t lower = 1;
  std::size_t upper = 1;
  bool exact = false;
  /// True when upper is the trivial bound G because pairwise analysis was
  /// too expensive for this genome.
  bool trivial_upper = false;
};

struct ApproxConfig {
  /// Exact mode enumerates all 4^l centers when l is at most this.
  std::size_t full_enumeration_max_length = 8;
  /// Cap on center-window distance evaluations in full enumeration.
  std::uint64_t max_full_enumeration_work = 4'000'000'000ULL;
  /// Cap on the number of candidate centers in neighborhood enumeration.
  std::uint64_t max_neighborhood_centers = 20'000'000ULL;
  /// Above this genome length bracket mode falls back to the suffix-array
  /// lower bound and the trivial upper bound G.
  std::size_t pairwise_max_genome = 20'000;
  /// Worker threads for pairwise window scans (results do not depend on it).
  unsigned threads = 1;
};

/// ℓ̃ bracket: [min_k k + D·M_lo(D,k+1), min_k k + D·M_hi(D,k+1)] over k >= l_crit.
struct NoisyThreshold {
  std::size_t D = 0;
  std::size_t l_crit = 1;
  std::size_t lower = 1;
  std::size_t upper = 1;
  std::size_t argmin_k = 1; ///< minimizing k of the upper evaluation
  bool exact = false;
  bool too_wide = false; ///< bracket spans at least D, so the multiple of D is undetermined
  std::vector<MBound> rows;
  std::vector<std::string> warnings;
};

/// Caches the suffix array and packed windows of one sequence so the many
/// M evaluations made by the k-loop share work.
class ApproxRepeatAnalyzer {
public:
  explicit ApproxRepeatAnalyzer(CircularSequence seq, ApproxConfig config = {});
  ~ApproxRepeatAnalyzer();
  ApproxRepeatAnalyzer(ApproxRepeatAnalyzer&&) noexcept;
  ApproxRepeatAnalyzer& operator=(ApproxRepeatAnalyzer&&) noexcept;

  const CircularSequence& sequence() const noexcept;
  const RepeatIndex& repeat_index() const;
  const RepeatReport& repeat_report() const;

  /// Throws InvalidArgument unless 1 <= length <= G; exact mode throws
  /// InfeasibleError when its enumeration would exceed the configured caps.
  MBound bounds(std::size_t d, std::size_t length, ApproxMode mode) const;

  NoisyThreshold noisy_threshold(std::size_t D, ApproxMode mode) const;

  /// Window positions covered by the best radius-d cluster centered on a
  /// window (the witness behind the bracket lower bound). Pairwise tier only.
  std::vector<std::size_t> best_window_cluster(std::size_t d, std::size_t length) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

MBound approx_repeat_bounds(const CircularSequence& seq, std::size_t d, std::size_t length,
                            ApproxMode mode, const ApproxConfig& config = {});

NoisyThreshold l_crit_noisy(const CircularSequence& seq, std::size_t D, ApproxMode mode,
                            const ApproxConfig& config = {});

} // namespace spectra
