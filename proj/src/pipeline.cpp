#include "spectra/pipeline.hpp"

#include <algorithm>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

NoisyThreshold candidate_threshold(const ApproxRepeatAnalyzer& analyzer, std::size_t D) {
  try {
    return analyzer.noisy_threshold(D, ApproxMode::exact);
  } catch (const InfeasibleError&) {
    NoisyThreshold t = analyzer.noisy_threshold(D, ApproxMode::bracket);
    t.warnings.push_back("exact M infeasible; certificate uses the bracket upper end");
    return t;
  }
}

} // namespace

Certificate certify(const CircularSequence& candidate, const ReadSet& reads, std::size_t D,
                    const ApproxConfig& config, const SearchOptions& options) {
  return certify(ApproxRepeatAnalyzer(candidate, config), reads, D, options);
}

Certificate certify(const ApproxRepeatAnalyzer& analyzer, const ReadSet& reads, std::size_t D,
                    const SearchOptions& options) {
  const CircularSequence& candidate = analyzer.sequence();
  Certificate cert;
  cert.candidate = candidate;
  cert.L = reads.L();
  cert.D = D;
  cert.threshold = candidate_threshold(analyzer, D);

  if (reads.size() != candidate.length() || reads.L() > candidate.length()) {
    cert.reason = "inconsistent: candidate length " + std::to_string(candidate.length()) +
                  " does not fit " + std::to_string(reads.size()) + " reads of length " +
                  std::to_string(reads.L());
    return cert;
  }
  try {
    cert.consistent = check_consistency(candidate, reads, D, options).consistent;
  } catch (const InfeasibleError& e) {
    cert.reason = std::string("consistency undecided: ") + e.what();
    return cert;
  }
  if (!cert.consistent) {
    cert.reason = "inconsistent";
    return cert;
  }
  if (cert.L > cert.threshold.upper) {
    cert.certified = true;
    cert.reason = "consistent and L=" + std::to_string(cert.L) + " > l_tilde_crit=" +
                  std::to_string(cert.threshold.upper);
  } else {
    cert.reason = "L=" + std::to_string(cert.L) + " does not exceed l_tilde_crit upper bound " +
                  std::to_string(cert.threshold.upper);
  }
  return cert;
}

PipelineResult full_pipeline(const ReadSet& reads, std::size_t D, const ApproxConfig& config,
                             const SearchOptions& options) {
  FoundAssembly found = find_consistent_assembly(reads, D, options);
  const std::size_t L = reads.L();
  ApproxRepeatAnalyzer analyzer(found.consensus, config);
  const std::size_t lc = analyzer.repeat_report().l_crit;

  PipelineResult out;
  out.consensus = found.consensus;
  out.k = L - 1;
  for (std::size_t k = lc; k + 1 <= L; ++k) {
    if (D == 0 || L > k + D * best_available_bound(analyzer, D, k + 1).upper) {
      out.k = k;
      out.guaranteed = true;
      break;
    }
  }
  if (!out.guaranteed) {
    out.warnings.push_back("no k >= l_crit(consensus) satisfies L > k + D*M; using k = L-1 "
                           "without a correction guarantee");
  }

  const std::size_t g = found.consensus.length();
  std::vector<std::string> spectrum;
  spectrum.reserve(g);
  for (std::size_t i = 0; i < g; ++i) spectrum.push_back(found.consensus.window(i, out.k + 1));

  NoiselessAssembly asmb = assemble_noiseless(spectrum);
  if (asmb.unique()) {
    out.sequence = asmb.sequence;
    out.certificate = certify(*asmb.sequence, reads, D, config, options);
  } else {
    out.ambiguity = std::move(asmb.ambiguity);
    out.certificate = certify(analyzer, reads, D, options);
    out.warnings.push_back("the corrected spectrum admits several reconstructions");
  }
  return out;
}

} // namespace spectra
