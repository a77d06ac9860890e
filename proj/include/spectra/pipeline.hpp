#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spectra/approx.hpp"
#include "spectra/assembly.hpp"
#include "spectra/debruijn.hpp"
#include "spectra/reads.hpp"
#include "spectra/sequence.hpp"

namespace spectra {

/// Certified means the candidate is consistent with the reads and L exceeds
/// the upper end of the candidate's own noisy threshold. When that holds the
/// candidate equals the unknown genome up to rotation.
struct Certificate {
  CircularSequence candidate{"A"};
  NoisyThreshold threshold;
  std::size_t L = 0;
  std::size_t D = 0;
  bool consistent = false;
  bool certified = false;
  std::string reason;
};

Certificate certify(const CircularSequence& candidate, const ReadSet& reads, std::size_t D,
                    const ApproxConfig& config = {}, const SearchOptions& options = {});
/// Same, reusing an analyzer of the candidate (and its cached M bounds).
Certificate certify(const ApproxRepeatAnalyzer& candidate, const ReadSet& reads, std::size_t D,
                    const SearchOptions& options = {});

struct PipelineResult {
  std::optional<CircularSequence> sequence; ///< unique reconstruction from the corrected spectrum
  std::optional<AmbiguityReport> ambiguity;
  CircularSequence consensus{"A"};
  std::size_t k = 0;       ///< corrected spectrum holds (k+1)-mers
  bool guaranteed = false; ///< L > k + D * M_hi(consensus, D, k+1) held for the chosen k
  Certificate certificate;
  std::vector<std::string> warnings;
};

/// Consistent assembly, then spectrum correction at the smallest k >= l_crit
/// of the consensus that meets the correction hypothesis (k = L-1 without a
/// guarantee when none does), then de Bruijn assembly and a certificate. On
/// ambiguity the certificate is issued for the consensus.
PipelineResult full_pipeline(const ReadSet& reads, std::size_t D, const ApproxConfig& config = {},
                             const SearchOptions& options = {});

} // namespace spectra
