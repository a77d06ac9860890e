// Acceptance run: one PASS/FAIL line per criterion. Exit status is 0 once
// every criterion has been evaluated; --strict turns any FAIL into exit 1.
// --log FILE also writes the result lines to FILE.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "gen.hpp"
#include "spectra/approx.hpp"
#include "spectra/assembly.hpp"
#include "spectra/debruijn.hpp"
#include "spectra/errors.hpp"
#include "spectra/fasta.hpp"
#include "spectra/oracle.hpp"
#include "spectra/pipeline.hpp"
#include "spectra/reads.hpp"
#include "spectra/repeats.hpp"

using namespace spectra;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Counts checks and keeps the first few failures for the summary line.
struct Tally {
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::vector<std::string> examples;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    ++failed;
    if (examples.size() < 3) examples.push_back(what());
  }
  bool ok() const { return failed == 0 && checks > 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks - failed << "/" << checks << " checks";
    for (const auto& e : examples) os << "; e.g. " << e;
    return os.str();
  }
};

// Candidates that certify must be the truth up to rotation.
struct Soundness {
  std::size_t issued = 0;
  std::size_t certified = 0;
  std::size_t false_certified = 0;
  std::vector<std::string> examples;
  std::map<std::string, ApproxRepeatAnalyzer> analyzers;

  void record(const CircularSequence& truth, const CircularSequence& candidate,
              const ReadSet& reads, std::size_t D) {
    ++issued;
    auto it = analyzers.try_emplace(candidate.str(), candidate).first;
    const Certificate c = certify(it->second, reads, D);
    if (!c.certified) return;
    ++certified;
    if (!rotation_equal(candidate, truth)) {
      ++false_certified;
      if (examples.size() < 3) {
        examples.push_back(truth.str() + " vs " + candidate.str() + " L=" +
                           std::to_string(reads.L()) + " D=" + std::to_string(D));
      }
    }
  }
};

std::vector<std::string> windows(const CircularSequence& s, std::size_t l) {
  std::vector<std::string> w;
  for (std::size_t i = 0; i < s.length(); ++i) w.push_back(s.window(i, l));
  std::sort(w.begin(), w.end());
  return w;
}

std::FILE* g_log = nullptr; // --log copy of the result lines

void emit(const std::string& line) {
  std::fputs(line.c_str(), stdout);
  std::fflush(stdout);
  if (g_log) {
    std::fputs(line.c_str(), g_log);
    std::fflush(g_log);
  }
}

void report(int id, const char* name, bool ok, const std::string& detail, double seconds,
            int& failures) {
  if (!ok) ++failures;
  char time[32];
  std::snprintf(time, sizeof time, " [%.1fs]\n", seconds);
  emit(std::string(ok ? "PASS" : "FAIL") + " criterion " + std::to_string(id) + " (" + name +
       "): " + detail + time);
}

constexpr ErasureStrategy::Kind kStrategies[] = {ErasureStrategy::Kind::suffix_erase,
                                                 ErasureStrategy::Kind::repeat_targeted,
                                                 ErasureStrategy::Kind::random_budgeted};

SimulatedReads simulate(const CircularSequence& s, std::size_t L, std::size_t D,
                        ErasureStrategy::Kind kind, std::uint64_t seed) {
  SimulatedReads clean = spectrum(s, L, seed);
  if (D == 0) return clean;
  return apply_erasures(s, clean, D, {kind, seed});
}

// ---------------------------------------------------------------------------

// Repeats that only share an endpoint (b1 == a2) still count as interleaved.
bool shared_endpoint(const RepeatReport& rep) {
  return rep.witness && rep.witness->b1 == rep.witness->a2;
}

struct NoiselessOutcome {
  Tally forward, converse;
  std::size_t shared = 0; // converse failures with a shared-endpoint witness
};

NoiselessOutcome criterion1(Soundness& sound) {
  NoiselessOutcome out;
  const oracle::OracleBudget budget;
  Rng rng(20240101);
  for (int it = 0; it < 300; ++it) {
    const std::size_t G = 6 + uniform_below(rng, 35);
    const char* alphabet = it % 2 ? "AC" : "ACGT";
    const CircularSequence s = testgen::random_aperiodic(rng, G, alphabet);
    sound.analyzers.clear();
    const RepeatReport rep = interleaved_length(s);
    const std::size_t lc = rep.l_crit;
    for (std::size_t L = 1; L <= std::min(G, lc + 3); ++L) {
      const auto w = windows(s, L);
      const NoiselessAssembly got = assemble_noiseless(w);
      const ReadSet reads = spectrum(s, L, it).reads;
      const std::string tag = s.str() + " L=" + std::to_string(L) + " l_crit=" +
                              std::to_string(lc);
      if (L > lc) {
        const auto classes = oracle::enumerate_eulerian(w, 2, budget);
        out.forward.expect(got.unique() && rotation_equal(*got.sequence, s) &&
                               classes.size() == 1,
                           [&] { return "not unique: " + tag; });
        if (got.sequence) sound.record(s, *got.sequence, reads, 0);
      } else {
        std::vector<std::string> classes;
        try {
          classes = oracle::enumerate_eulerian(w, 8, budget);
        } catch (const OracleBudgetExceeded&) {
          classes = oracle::enumerate_eulerian(w, 2, budget);
        }
        out.converse.expect(classes.size() >= 2, [&] { return "unique: " + tag; });
        out.shared += classes.size() < 2 && shared_endpoint(rep);
        for (const auto& c : classes) sound.record(s, CircularSequence(c), reads, 0);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct CorrectionRun {
  CircularSequence truth;
  CircularSequence consensus;
  std::size_t k;
};

Tally criterion2(Soundness& sound, std::vector<CorrectionRun>& runs) {
  Tally t;
  Rng rng(20240202);
  int sequences = 0;
  while (sequences < 100) {
    const std::size_t G = 12 + uniform_below(rng, 49);
    const CircularSequence s = testgen::random_aperiodic(rng, G, "ACGT");
    ApproxRepeatAnalyzer analyzer(s);
    const std::size_t lc = analyzer.repeat_report().l_crit;
    const std::size_t D = 1 + uniform_below(rng, 2);
    const NoisyThreshold th = analyzer.noisy_threshold(D, ApproxMode::exact);
    const std::size_t L = th.upper + 1 + uniform_below(rng, 3);
    if (L > G) continue;
    ++sequences;
    sound.analyzers.clear();
    std::vector<std::size_t> ks;
    for (std::size_t k = lc; k + 1 <= L; ++k) {
      if (L > k + D * analyzer.bounds(D, k + 1, ApproxMode::exact).upper) ks.push_back(k);
    }
    for (auto kind : kStrategies) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const SimulatedReads sim = simulate(s, L, D, kind, seed * 7919 + sequences);
        for (std::uint64_t restart = 1; restart <= 3; ++restart) {
          SearchOptions opt;
          opt.shuffle_seed = restart;
          const FoundAssembly found = find_consistent_assembly(sim.reads, D, opt);
          sound.record(s, found.consensus, sim.reads, D);
          for (std::size_t k : ks) {
            const auto c = correct_spectrum(sim.reads, D, k, opt);
            t.expect(c.spectrum == windows(s, k + 1), [&] {
              return s.str() + " L=" + std::to_string(L) + " D=" + std::to_string(D) +
                     " k=" + std::to_string(k) + " " + to_string(kind);
            });
            if (runs.size() < 50 && restart == 1) runs.push_back({s, c.consensus, k});
          }
        }
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

// Least rotations of every aperiodic sequence of length G over the alphabet.
std::vector<CircularSequence> necklaces(std::size_t G, std::string_view alphabet) {
  std::vector<CircularSequence> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < G; ++i) total *= alphabet.size();
  std::string s(G, alphabet[0]);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < G; ++i) {
      s[G - 1 - i] = alphabet[c % alphabet.size()];
      c /= alphabet.size();
    }
    if (least_rotation(s) != 0 || circular_period(s) != G) continue;
    out.emplace_back(s);
  }
  return out;
}

struct ErasureOutcome {
  Tally uniqueness, converse;
  std::size_t sequences = 0;
  std::size_t shared = 0;
};

void erasure_instance(const CircularSequence& s, std::string_view alphabet, ErasureOutcome& out,
                      Soundness& sound, Rng& rng) {
  ++out.sequences;
  sound.analyzers.clear();
  const oracle::OracleBudget budget;
  const std::size_t G = s.length();
  ApproxRepeatAnalyzer analyzer(s);
  const std::size_t lc = analyzer.repeat_report().l_crit;
  for (std::size_t D = 1; D <= 2; ++D) {
    const std::size_t lt = analyzer.noisy_threshold(D, ApproxMode::exact).upper;
    for (std::size_t L = D + 1; L <= G; ++L) {
      const bool above = L > lt;
      const bool below = L <= lc + D;
      if (!above && !below) continue;
      for (auto kind : kStrategies) {
        if (below && !above && kind != ErasureStrategy::Kind::suffix_erase) continue;
        const SimulatedReads sim = simulate(s, L, D, kind, uniform_below(rng, 1u << 30));
        const auto classes = oracle::enumerate_consistent(sim.reads, D, alphabet, G, budget);
        const std::string tag = s.str() + " L=" + std::to_string(L) + " D=" +
                                std::to_string(D) + " " + to_string(kind);
        if (above) {
          out.uniqueness.expect(classes.size() == 1 && classes[0] == s.canonical().str(),
                                [&] { return std::to_string(classes.size()) + " classes: " + tag; });
        } else {
          out.converse.expect(classes.size() >= 2, [&] { return "unique: " + tag; });
          out.shared += classes.size() < 2 && shared_endpoint(analyzer.repeat_report());
        }
        for (const auto& c : classes) sound.record(s, CircularSequence(c), sim.reads, D);
      }
    }
  }
}

ErasureOutcome criterion3(Soundness& sound) {
  ErasureOutcome out;
  Rng rng(20240303);
  for (std::size_t G = 4; G <= 12; ++G) {
    for (const auto& s : necklaces(G, "AC")) erasure_instance(s, "AC", out, sound, rng);
  }
  for (std::size_t G = 4; G <= 8; ++G) {
    for (const auto& s : necklaces(G, "ACGT")) erasure_instance(s, "ACGT", out, sound, rng);
  }
  return out;
}

// ---------------------------------------------------------------------------

Tally criterion4() {
  Tally t;
  const CircularSequence s("ACGTACGCT");
  oracle::OracleBudget big;
  big.max_center_space = 1ULL << 20;
  ApproxRepeatAnalyzer analyzer(s);
  auto eq = [&](const char* what, std::size_t engine, std::size_t brute, std::size_t want) {
    t.expect(engine == want && brute == want, [&] {
      return std::string(what) + " engine=" + std::to_string(engine) + " oracle=" +
             std::to_string(brute) + " expected=" + std::to_string(want);
    });
  };
  eq("l_crit", analyzer.repeat_report().l_crit, oracle::brute_lcrit(s), 2);
  eq("M(1,3)", analyzer.bounds(1, 3, ApproxMode::exact).upper, oracle::exact_center_M(s, 1, 3), 3);
  eq("M(1,4)", analyzer.bounds(1, 4, ApproxMode::exact).upper, oracle::exact_center_M(s, 1, 4), 2);
  std::size_t brute_tilde = SIZE_MAX;
  const std::size_t lc = oracle::brute_lcrit(s);
  for (std::size_t k = lc; k + 1 <= s.length(); ++k) {
    brute_tilde = std::min(brute_tilde, k + oracle::exact_center_M(s, 1, k + 1, big));
  }
  const NoisyThreshold th = analyzer.noisy_threshold(1, ApproxMode::exact);
  t.expect(th.exact && th.lower == th.upper, [] { return std::string("l_tilde not exact"); });
  eq("l_tilde(1)", th.upper, brute_tilde, 5);
  return t;
}

// ---------------------------------------------------------------------------

Tally criterion5() {
  Tally t;
  const oracle::OracleBudget budget;
  Rng rng(20240505);
  for (int it = 0; it < 200; ++it) {
    const std::size_t G = 5 + uniform_below(rng, 26);
    const CircularSequence s = testgen::random_aperiodic(rng, G, it % 2 ? "AC" : "ACGT");
    ApproxRepeatAnalyzer analyzer(s);
    const std::size_t lc = analyzer.repeat_report().l_crit;
    const std::string tag = s.str();
    t.expect(analyzer.noisy_threshold(0, ApproxMode::exact).upper == lc &&
                 analyzer.noisy_threshold(0, ApproxMode::exact).lower == lc,
             [&] { return "l_tilde(0) != l_crit: " + tag; });
    for (std::size_t D = 1; D <= 3; ++D) {
      const auto th = analyzer.noisy_threshold(D, ApproxMode::exact);
      t.expect(th.lower >= lc + D, [&] { return "l_tilde < l_crit + D: " + tag; });
    }
    const std::size_t max_len = std::min<std::size_t>(G, 8);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> exact;
    for (std::size_t d = 0; d <= 3; ++d) {
      for (std::size_t l = 1; l <= max_len; ++l) {
        const MBound e = analyzer.bounds(d, l, ApproxMode::exact);
        const MBound b = analyzer.bounds(d, l, ApproxMode::bracket);
        const std::size_t truth = oracle::exact_center_M(s, d, l, budget);
        exact[{d, l}] = e.upper;
        const std::string cell = tag + " d=" + std::to_string(d) + " l=" + std::to_string(l);
        t.expect(e.exact && e.lower == truth && e.upper == truth,
                 [&] { return "exact != oracle " + cell; });
        t.expect(b.lower <= truth && truth <= b.upper, [&] { return "bracket misses " + cell; });
      }
    }
    for (std::size_t d = 0; d <= 3; ++d) {
      for (std::size_t l = 1; l <= max_len; ++l) {
        if (l > 1) {
          t.expect(exact[{d, l}] <= exact[{d, l - 1}], [&] { return "increasing in l: " + tag; });
        }
        if (d > 0) {
          t.expect(exact[{d, l}] >= exact[{d - 1, l}], [&] { return "decreasing in d: " + tag; });
        }
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

struct GenomeOutcome {
  bool l_crit_ok = false;
  bool bracket_ok = false;
  bool fast = false;
  std::string detail;
};

GenomeOutcome criterion7(const std::string& path) {
  GenomeOutcome out;
  const auto start = Clock::now();
  std::optional<FastaRecord> loaded;
  try {
    loaded = read_fasta_file(path, {true});
  } catch (const Error& e) {
    out.detail = std::string("cannot load genome: ") + e.what();
    return out;
  }
  const FastaRecord& rec = *loaded;
  ApproxRepeatAnalyzer analyzer(rec.sequence);
  const RepeatReport& rep = analyzer.repeat_report();
  const NoisyThreshold th = analyzer.noisy_threshold(200, ApproxMode::bracket);
  const double seconds = since(start);
  out.fast = seconds < 60.0;
  out.l_crit_ok = rep.l_crit == 1744;
  bool contains = false;
  for (std::size_t m = 2; m <= 4; ++m) {
    const std::size_t v = rep.l_crit + m * 200;
    contains = contains || (th.lower <= v && v <= th.upper);
  }
  out.bracket_ok = contains || th.too_wide;
  std::ostringstream os;
  os << rec.id << " G=" << rec.sequence.length() << " (" << rec.replaced
     << " symbols mapped to A); l_crit=" << rep.l_crit << " (expected 1744), l_inter="
     << rep.l_inter << "; D=200 bracket [" << th.lower << ", " << th.upper << "]"
     << (th.too_wide ? " flagged too wide" : "") << (contains ? " contains l_crit+mD" : "")
     << "; " << seconds << "s (limit 60s)";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------

Tally criterion8(const std::vector<CorrectionRun>& runs) {
  Tally t;
  for (const auto& r : runs) {
    const bool hall = oracle::hall_matching_check(r.truth, r.consensus, r.k);
    const bool same = windows(r.truth, r.k + 1) == windows(r.consensus, r.k + 1);
    t.expect(hall && same, [&] { return "matching missing for " + r.truth.str(); });
  }
  t.expect(runs.size() == 50, [&] { return std::to_string(runs.size()) + " runs available"; });

  Rng rng(20240808);
  std::size_t mismatched = 0;
  while (mismatched < 20) {
    const std::size_t G = 8 + uniform_below(rng, 30);
    const CircularSequence s = testgen::random_aperiodic(rng, G, "ACGT");
    std::string m = s.str();
    const std::size_t pos = uniform_below(rng, G);
    m[pos] = "ACGT"[(std::string_view("ACGT").find(m[pos]) + 1 + uniform_below(rng, 3)) % 4];
    const CircularSequence other(m);
    const std::size_t k = 1 + uniform_below(rng, G - 1);
    const bool same = windows(s, k + 1) == windows(other, k + 1);
    if (same) continue;
    ++mismatched;
    t.expect(!oracle::hall_matching_check(s, other, k),
             [&] { return "matching found for " + s.str() + " vs " + m; });
  }
  return t;
}

} // namespace

int main(int argc, char** argv) {
  bool strict = false;
  int only = 0;
  std::string genome = SPECTRA_DATA_DIR "/ecoli_k12_w3110.fa.gz";
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) {
      strict = true;
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--genome") == 0 && i + 1 < argc) {
      genome = argv[++i];
    } else if (std::strcmp(argv[i], "--log") == 0 && i + 1 < argc) {
      g_log = std::fopen(argv[++i], "w");
    }
  }

  int failures = 0;
  Soundness sound;
  std::vector<CorrectionRun> runs;

  // --only N runs criterion N (criteria 6 and 8 need 1-3 and 2 for their data)
  auto want = [&](int id) { return only == 0 || only == id; };
  auto t0 = Clock::now();
  if (want(1) || want(6)) {
    const NoiselessOutcome c1 = criterion1(sound);
    report(1, "noiseless threshold, both directions", c1.forward.ok() && c1.converse.ok(),
           "forward " + c1.forward.summary() + "; converse " + c1.converse.summary() + "; " +
               std::to_string(c1.shared) + " converse failures have a shared-endpoint witness",
           since(t0),
           failures);
  }

  t0 = Clock::now();
  if (want(2) || want(6) || want(8)) {
    const Tally c2 = criterion2(sound, runs);
    report(2, "spectrum correction", c2.ok(), c2.summary(), since(t0), failures);
  }

  t0 = Clock::now();
  if (want(3) || want(6)) {
    const ErasureOutcome c3 = criterion3(sound);
    report(3, "uniqueness under erasures, exhaustive", c3.uniqueness.ok() && c3.converse.ok(),
           std::to_string(c3.sequences) + " sequences; uniqueness " + c3.uniqueness.summary() +
               "; converse " + c3.converse.summary() + "; " + std::to_string(c3.shared) +
               " converse failures have a shared-endpoint witness",
           since(t0), failures);
  }

  t0 = Clock::now();
  if (want(4)) {
    const Tally c4 = criterion4();
    report(4, "worked fixture", c4.ok(), c4.summary(), since(t0), failures);
  }

  t0 = Clock::now();
  if (want(5)) {
    const Tally c5 = criterion5();
    report(5, "threshold structure", c5.ok(), c5.summary(), since(t0), failures);
  }

  if (want(6)) {
    std::ostringstream os;
    os << sound.issued << " certificates, " << sound.certified << " certified, "
       << sound.false_certified << " false";
    for (const auto& e : sound.examples) os << "; e.g. " << e;
    report(6, "certificate soundness", sound.false_certified == 0 && sound.certified > 0,
           os.str(), 0.0, failures);
  }

  t0 = Clock::now();
  if (want(7)) {
    const GenomeOutcome c7 = criterion7(genome);
    report(7, "E. coli K-12 repeat threshold", c7.l_crit_ok && c7.bracket_ok && c7.fast,
           c7.detail, since(t0), failures);
  }

  t0 = Clock::now();
  if (want(8)) {
    const Tally c8 = criterion8(runs);
    report(8, "matching diagnostic", c8.ok(), c8.summary(), since(t0), failures);
  }

  emit(std::to_string(failures) + " criteria failed\n");
  if (g_log) std::fclose(g_log);
  return strict && failures > 0 ? 1 : 0;
}
