#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "report.hpp"
#include "spectra/assembly.hpp"
#include "spectra/errors.hpp"
#include "spectra/fasta.hpp"
#include "spectra/oracle.hpp"
#include "spectra/reads.hpp"

using namespace spectra;
using report::Json;

namespace {

enum Exit : int {
  kOk = 0,
  kUncertified = 1,
  kParse = 2,
  kInfeasible = 3,
  kAmbiguous = 4,
};

// Destination that is stdout unless a path was given.
class Output {
public:
  explicit Output(const std::string& path, std::ostream& fallback = std::cout)
      : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ParseError("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit(const Json& j, const std::string& path, std::ostream& fallback = std::cout) {
  Output out(path, fallback);
  *out << j.dump(2) << '\n';
}

FastaRecord load_fasta(const std::string& path, bool map_unknown) {
  FastaRecord rec = read_fasta_file(path, {map_unknown});
  if (rec.replaced > 0) {
    std::cerr << "warning: " << rec.replaced << " symbols outside ACGT were rewritten to A\n";
  }
  return rec;
}

ReadSet load_reads(const std::string& path) { return parse_reads(slurp_file(path)); }

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// Reference values published for E. coli K-12 from alignment heuristics. They
// are quoted in reports, never checked.
Json reference_notes(const FastaRecord& rec) {
  const std::string& d = rec.description;
  if (d.find("Escherichia coli") == std::string::npos || d.find("K-12") == std::string::npos) {
    return Json::array();
  }
  return Json::array({{{"reference", "E. coli K-12 published table"},
                       {"l_crit", 1744},
                       {"D", 200},
                       {"l_tilde_crit_heuristic", 2544},
                       {"note", "heuristic value from approximate-repeat alignment; quoted, not "
                                "reproduced"}}});
}

struct AnalyzeArgs {
  std::string fasta, out;
  std::vector<std::size_t> D;
  std::string mode = "exact";
  bool bracket = false, timings = false, map_unknown = false;
  unsigned threads = 1;
};

int cmd_analyze(const AnalyzeArgs& a) {
  Stopwatch total;
  Json warnings = Json::array();
  FastaRecord rec = load_fasta(a.fasta, a.map_unknown);
  const ApproxMode mode = a.bracket || a.mode == "bracket" ? ApproxMode::bracket
                                                           : ApproxMode::exact;
  ApproxConfig config;
  config.threads = a.threads;
  ApproxRepeatAnalyzer analyzer(rec.sequence, config);

  Stopwatch repeats;
  const RepeatReport& rep = analyzer.repeat_report();
  const double repeat_seconds = repeats.seconds();
  for (const auto& w : rep.warnings) warnings.push_back(w);

  std::vector<std::size_t> Ds = a.D;
  if (Ds.empty()) {
    Ds.push_back(static_cast<std::size_t>(std::lround(0.15 * static_cast<double>(rep.l_crit))));
    if (Ds.front() == 0) {
      warnings.push_back("default D = round(0.15*l_crit) is 0; l_tilde reduces to l_crit");
    }
  }

  Json thresholds = Json::array();
  Json table = Json::array();
  Stopwatch noisy;
  for (std::size_t D : Ds) {
    NoisyThreshold t;
    try {
      t = analyzer.noisy_threshold(D, mode);
    } catch (const InfeasibleError& e) {
      std::cerr << "error: " << e.what() << " (use --bracket)\n";
      return kInfeasible;
    }
    thresholds.push_back(report::to_json(t));
    for (const auto& row : t.rows) table.push_back(report::to_json(row));
    for (const auto& w : t.warnings) {
      if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
    }
    if (t.too_wide) {
      warnings.push_back("l_tilde bracket for D=" + std::to_string(D) +
                         " is too wide to determine the multiple of D");
    }
  }

  Json j = {{"schema", report::kSchema},
            {"genome", {{"id", rec.id}, {"G", rec.sequence.length()}}},
            {"mode", mode == ApproxMode::exact ? "exact" : "bracket"},
            {"theorem_grade", rec.sequence.theorem_grade()},
            {"l_crit", rep.l_crit},
            {"l_inter", rep.l_inter},
            {"witness", rep.witness ? report::to_json(*rep.witness) : Json(nullptr)},
            {"l_tilde", thresholds},
            {"m_table", table},
            {"warnings", warnings},
            {"notes", reference_notes(rec)}};
  if (rec.replaced > 0) j["genome"]["replaced_symbols"] = rec.replaced;
  if (a.timings) {
    j["timings"] = {{"repeats_seconds", repeat_seconds},
                    {"l_tilde_seconds", noisy.seconds()},
                    {"total_seconds", total.seconds()}};
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << '\n';
  emit(j, a.out);
  return kOk;
}

struct SimulateArgs {
  std::string fasta, out, strategy = "suffix";
  std::size_t L = 0, D = 0;
  std::uint64_t seed = 0;
  bool map_unknown = false;
};

int cmd_simulate(const SimulateArgs& a) {
  FastaRecord rec = load_fasta(a.fasta, a.map_unknown);
  const auto kind = parse_strategy(a.strategy);
  SimulatedReads sim = spectrum(rec.sequence, a.L, a.seed);
  if (a.D > 0) sim = apply_erasures(rec.sequence, sim, a.D, {kind, a.seed});
  Output out(a.out);
  write_reads(*out, sim.reads);
  return kOk;
}

struct AssembleArgs {
  std::string reads, out, certificate;
  std::optional<std::size_t> D;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

int cmd_assemble(const AssembleArgs& a) {
  ReadSet reads = load_reads(a.reads);
  const std::size_t D = a.D.value_or(reads.D());
  ApproxConfig config;
  config.threads = a.threads;
  SearchOptions search;
  search.shuffle_seed = a.seed;

  PipelineResult r;
  try {
    r = full_pipeline(reads, D, config, search);
  } catch (const NoConsistentAssembly& e) {
    emit({{"schema", report::kSchema},
          {"consistent", false},
          {"certified", false},
          {"verdict", "not_certified"},
          {"reason", e.what()}},
         a.certificate, std::cerr);
    return kUncertified;
  }
  Json j = report::to_json(r.certificate);
  j["k"] = r.k;
  j["correction_guaranteed"] = r.guaranteed;
  for (const auto& w : r.warnings) j["warnings"].push_back(w);
  if (r.ambiguity) {
    j["ambiguity"] = report::to_json(*r.ambiguity);
    emit(j, a.certificate, std::cerr);
    return kAmbiguous;
  }
  {
    Output out(a.out);
    write_fasta(*out, "assembly", *r.sequence);
  }
  emit(j, a.certificate, std::cerr);
  return r.certificate.certified ? kOk : kUncertified;
}

struct CorrectArgs {
  std::string reads, out;
  std::size_t k = 0;
  std::optional<std::size_t> D;
  std::optional<std::uint64_t> seed;
};

int cmd_correct(const CorrectArgs& a) {
  ReadSet reads = load_reads(a.reads);
  const std::size_t D = a.D.value_or(reads.D());
  SearchOptions search;
  search.shuffle_seed = a.seed;
  CorrectedSpectrum c = correct_spectrum(reads, D, a.k, search);
  for (const auto& w : c.warnings) std::cerr << "warning: " << w << '\n';
  if (!c.guaranteed) {
    std::cerr << "warning: L > k + D*M does not hold for the consensus; spectrum not guaranteed\n";
  }
  std::vector<ErasableString> kmers;
  kmers.reserve(c.spectrum.size());
  for (const auto& s : c.spectrum) kmers.emplace_back(s);
  Output out(a.out);
  write_reads(*out, ReadSet(std::move(kmers), c.k + 1, 0));
  return kOk;
}

struct CertifyArgs {
  std::string fasta, reads, out;
  std::optional<std::size_t> D;
  unsigned threads = 1;
  bool map_unknown = false;
};

int cmd_certify(const CertifyArgs& a) {
  FastaRecord rec = load_fasta(a.fasta, a.map_unknown);
  ReadSet reads = load_reads(a.reads);
  ApproxConfig config;
  config.threads = a.threads;
  Certificate c = certify(rec.sequence, reads, a.D.value_or(reads.D()), config);
  emit(report::to_json(c), a.out);
  return c.certified ? kOk : kUncertified;
}

struct OracleArgs {
  std::string what, input, input2, out, alphabet = "ACGT";
  std::size_t d = 0, length = 1, k = 0;
  std::optional<std::size_t> D;
  bool map_unknown = false;
};

int cmd_oracle(const OracleArgs& a) {
  const auto budget = oracle::OracleBudget::from_environment();
  Json j = {{"schema", report::kSchema}, {"oracle", a.what}};
  if (a.what == "lcrit") {
    auto rec = load_fasta(a.input, a.map_unknown);
    j["l_crit"] = oracle::brute_lcrit(rec.sequence, budget);
  } else if (a.what == "repeats") {
    auto rec = load_fasta(a.input, a.map_unknown);
    Json pairs = Json::array();
    for (const auto& p : oracle::brute_maximal_repeats(rec.sequence, budget)) {
      pairs.push_back({{"pos1", p.pos1}, {"pos2", p.pos2}, {"length", p.length}});
    }
    j["pairs"] = pairs;
  } else if (a.what == "center-m") {
    auto rec = load_fasta(a.input, a.map_unknown);
    j["d"] = a.d;
    j["length"] = a.length;
    j["M"] = oracle::exact_center_M(rec.sequence, a.d, a.length, budget);
  } else if (a.what == "consistent") {
    ReadSet reads = load_reads(a.input);
    j["classes"] = oracle::enumerate_consistent(reads, a.D.value_or(reads.D()), a.alphabet,
                                                reads.size(), budget);
  } else if (a.what == "eulerian") {
    ReadSet reads = load_reads(a.input);
    j["classes"] = oracle::enumerate_eulerian(reads.strings(), 0, budget);
  } else if (a.what == "hall") {
    auto truth = load_fasta(a.input, a.map_unknown);
    auto cand = load_fasta(a.input2, a.map_unknown);
    j["k"] = a.k;
    j["perfect_matching"] = oracle::hall_matching_check(truth.sequence, cand.sequence, a.k, budget);
  } else {
    throw InvalidArgument("unknown oracle '" + a.what + "'");
  }
  emit(j, a.out);
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assembly feasibility thresholds and erasure-robust assembly"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "l_crit, witnesses, M table and l_tilde brackets");
  analyze->add_option("fasta", an.fasta, "FASTA file (gzip allowed)")->required();
  analyze->add_option("--D", an.D, "erasure budgets (default round(0.15*l_crit))")->delimiter(',');
  analyze->add_option("--mode", an.mode, "exact or bracket")
      ->check(CLI::IsMember({"exact", "bracket"}));
  analyze->add_flag("--bracket", an.bracket, "same as --mode bracket");
  analyze->add_option("--threads", an.threads, "worker threads")->check(CLI::PositiveNumber);
  analyze->add_option("-o,--out", an.out, "write JSON here instead of stdout");
  analyze->add_flag("--timings", an.timings, "include wall-clock timings");
  analyze->add_flag("--map-unknown", an.map_unknown, "rewrite symbols outside ACGT to A");

  SimulateArgs sm;
  auto* simulate = app.add_subcommand("simulate", "write an erased read set");
  simulate->add_option("fasta", sm.fasta, "FASTA file")->required();
  simulate->add_option("--L", sm.L, "read length")->required();
  simulate->add_option("--D", sm.D, "erasure budget");
  simulate->add_option("--strategy", sm.strategy, "suffix, repeat or random");
  simulate->add_option("--seed", sm.seed, "presentation and erasure seed");
  simulate->add_option("-o,--out", sm.out, "reads file (default stdout)");
  simulate->add_flag("--map-unknown", sm.map_unknown, "rewrite symbols outside ACGT to A");

  AssembleArgs as;
  auto* assemble = app.add_subcommand("assemble", "assemble and certify a read set");
  assemble->add_option("reads", as.reads, "reads file")->required();
  assemble->add_option("--D", as.D, "erasure budget (default from the header)");
  assemble->add_option("--seed", as.seed, "shuffle the assembly search order");
  assemble->add_option("--threads", as.threads, "worker threads")->check(CLI::PositiveNumber);
  assemble->add_option("-o,--out", as.out, "FASTA output (default stdout)");
  assemble->add_option("--certificate", as.certificate, "certificate JSON (default stderr)");

  CorrectArgs cs;
  auto* correct = app.add_subcommand("correct-spectrum", "corrected (k+1)-spectrum");
  correct->add_option("reads", cs.reads, "reads file")->required();
  correct->add_option("--k", cs.k, "spectrum holds (k+1)-mers")->required();
  correct->add_option("--D", cs.D, "erasure budget (default from the header)");
  correct->add_option("--seed", cs.seed, "shuffle the assembly search order");
  correct->add_option("-o,--out", cs.out, "spectrum file (default stdout)");

  CertifyArgs cf;
  auto* cert = app.add_subcommand("certify", "certify a candidate against a read set");
  cert->add_option("fasta", cf.fasta, "candidate FASTA")->required();
  cert->add_option("reads", cf.reads, "reads file")->required();
  cert->add_option("--D", cf.D, "erasure budget (default from the header)");
  cert->add_option("--threads", cf.threads, "worker threads")->check(CLI::PositiveNumber);
  cert->add_option("-o,--out", cf.out, "certificate JSON (default stdout)");
  cert->add_flag("--map-unknown", cf.map_unknown, "rewrite symbols outside ACGT to A");

  OracleArgs orc;
  auto* orac = app.add_subcommand("oracle", "brute-force references (small inputs only)");
  orac->add_option("which", orc.what, "lcrit, repeats, center-m, consistent, eulerian, hall")
      ->required()
      ->check(CLI::IsMember({"lcrit", "repeats", "center-m", "consistent", "eulerian", "hall"}));
  orac->add_option("input", orc.input, "FASTA, or reads file for consistent/eulerian")->required();
  orac->add_option("input2", orc.input2, "candidate FASTA for hall");
  orac->add_option("--d", orc.d, "radius for center-m");
  orac->add_option("--length", orc.length, "window length for center-m");
  orac->add_option("--k", orc.k, "hall compares (k+1)-mers");
  orac->add_option("--D", orc.D, "erasure budget for consistent");
  orac->add_option("--alphabet", orc.alphabet, "alphabet for consistent");
  orac->add_option("-o,--out", orc.out, "JSON output (default stdout)");
  orac->add_flag("--map-unknown", orc.map_unknown, "rewrite symbols outside ACGT to A");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*analyze) return cmd_analyze(an);
    if (*simulate) return cmd_simulate(sm);
    if (*assemble) return cmd_assemble(as);
    if (*correct) return cmd_correct(cs);
    if (*cert) return cmd_certify(cf);
    if (*orac) return cmd_oracle(orc);
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const OracleBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise SPECTRA_ORACLE_BUDGET)\n";
    return kInfeasible;
  } catch (const NoConsistentAssembly& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUncertified;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }
  return kOk;
}
