#include "spectra/reads.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <sstream>

#include "spectra/approx.hpp"
#include "spectra/errors.hpp"
#include "spectra/random.hpp"
#include "spectra/repeats.hpp"

namespace spectra {

ReadSet::ReadSet(std::vector<ErasableString> reads, std::size_t L, std::size_t D, std::uint64_t seed)
    : reads_(std::move(reads)), L_(L), D_(D), seed_(seed) {
  if (L_ == 0) {
    throw InvalidArgument("read length must be positive");
  }
  for (std::size_t i = 0; i < reads_.size(); ++i) {
    if (reads_[i].length() != L_) {
      throw InvalidArgument("read " + std::to_string(i) + " has length " +
                            std::to_string(reads_[i].length()) + ", expected " + std::to_string(L_));
    }
  }
}

std::vector<std::string> ReadSet::strings() const {
  std::vector<std::string> out;
  out.reserve(reads_.size());
  for (const auto& r : reads_) out.push_back(r.str());
  return out;
}

std::string to_string(ErasureStrategy::Kind kind) {
  switch (kind) {
  case ErasureStrategy::Kind::suffix_erase: return "suffix_erase";
  case ErasureStrategy::Kind::repeat_targeted: return "repeat_targeted";
  case ErasureStrategy::Kind::random_budgeted: return "random_budgeted";
  }
  return "unknown";
}

ErasureStrategy::Kind parse_strategy(std::string_view name) {
  if (name == "suffix" || name == "suffix_erase") return ErasureStrategy::Kind::suffix_erase;
  if (name == "repeat" || name == "repeat_targeted") return ErasureStrategy::Kind::repeat_targeted;
  if (name == "random" || name == "random_budgeted") return ErasureStrategy::Kind::random_budgeted;
  throw InvalidArgument("unknown erasure strategy '" + std::string(name) + "'");
}

SimulatedReads spectrum(const CircularSequence& seq, std::size_t L, std::uint64_t seed) {
  const std::size_t g = seq.length();
  if (L == 0 || L > g) {
    throw InvalidArgument("read length L=" + std::to_string(L) + " outside [1, G=" +
                          std::to_string(g) + "]");
  }
  std::vector<std::size_t> origin(g);
  std::iota(origin.begin(), origin.end(), 0);
  Rng rng(seed);
  shuffle(origin, rng);
  std::vector<ErasableString> reads;
  reads.reserve(g);
  for (std::size_t o : origin) {
    reads.emplace_back(seq.window(o, L));
  }
  return SimulatedReads{ReadSet(std::move(reads), L, 0, seed), std::move(origin)};
}

namespace {

class ErasureState {
public:
  ErasureState(const SimulatedReads& in, std::size_t D)
      : L_(in.reads.L()), D_(D), g_(in.reads.G()), origin_(in.origin), symbols_(in.reads.strings()),
        read_left_(g_, D), base_left_(g_, D), read_at_(g_, 0) {
    for (std::size_t i = 0; i < g_; ++i) {
      read_at_[origin_[i]] = i;
    }
  }

  /// Erase offset j of read r if both budgets allow it.
  bool erase(std::size_t r, std::size_t j) {
    const std::size_t base = (origin_[r] + j) % g_;
    if (symbols_[r][j] == kErased || read_left_[r] == 0 || base_left_[base] == 0) {
      return false;
    }
    symbols_[r][j] = kErased;
    --read_left_[r];
    --base_left_[base];
    return true;
  }

  std::size_t read_left(std::size_t r) const { return read_left_[r]; }
  std::size_t base_left(std::size_t b) const { return base_left_[b]; }
  std::size_t read_at(std::size_t start) const { return read_at_[start % g_]; }
  std::size_t L() const { return L_; }
  std::size_t G() const { return g_; }
  char symbol(std::size_t r, std::size_t j) const { return symbols_[r][j]; }

  SimulatedReads finish(const ReadSet& original) && {
    std::vector<ErasableString> reads;
    reads.reserve(g_);
    for (auto& s : symbols_) reads.emplace_back(std::move(s));
    return SimulatedReads{ReadSet(std::move(reads), L_, D_, original.seed()), origin_};
  }

private:
  std::size_t L_, D_, g_;
  std::vector<std::size_t> origin_;
  std::vector<std::string> symbols_;
  std::vector<std::size_t> read_left_, base_left_, read_at_;
};

void suffix_erase(ErasureState& st, std::size_t D) {
  for (std::size_t r = 0; r < st.G(); ++r) {
    for (std::size_t j = st.L() - D; j < st.L(); ++j) {
      const bool ok = st.erase(r, j);
      if (!ok) {
        throw Error("suffix_erase: budget repair failure"); // each base is hit exactly D times
      }
    }
  }
}

void random_budgeted(ErasureState& st, std::size_t D, Rng& rng) {
  std::vector<std::size_t> order(st.G());
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<std::size_t> offsets(st.L());
  for (std::size_t r : order) {
    const std::size_t target = static_cast<std::size_t>(uniform_below(rng, D + 1));
    std::iota(offsets.begin(), offsets.end(), 0);
    shuffle(offsets, rng);
    std::size_t done = 0;
    for (std::size_t j : offsets) {
      if (done == target) break;
      done += st.erase(r, j);
    }
  }
}

void repeat_targeted(ErasureState& st, const CircularSequence& truth, std::size_t D, Rng& rng) {
  const std::size_t g = st.G();
  const std::size_t L = st.L();
  std::vector<std::size_t> tier(g, 0), score(g, 0);

  RepeatIndex index(truth);
  const RepeatReport rep = index.interleaved();
  const std::size_t min_len = g <= 4096 ? 1 : std::max<std::size_t>(2, rep.l_inter);
  for (const RepeatPair& p : index.maximal_repeats(min_len)) {
    for (std::size_t k = 0; k < p.length; ++k) {
      score[(p.pos1 + k) % g] = std::max(score[(p.pos1 + k) % g], p.length);
      score[(p.pos2 + k) % g] = std::max(score[(p.pos2 + k) % g], p.length);
    }
  }
  ApproxConfig cfg;
  if (g <= cfg.pairwise_max_genome) {
    ApproxRepeatAnalyzer analyzer(truth, cfg);
    const std::size_t len = std::min(g, rep.l_crit + 1);
    for (std::size_t start : analyzer.best_window_cluster(D, len)) {
      for (std::size_t k = 0; k < len; ++k) tier[(start + k) % g] = 1;
    }
  }

  std::vector<std::uint64_t> tie(g);
  for (auto& t : tie) t = rng();
  std::vector<std::size_t> bases(g);
  std::iota(bases.begin(), bases.end(), 0);
  std::sort(bases.begin(), bases.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(tier[a], score[a], tie[a]) > std::tie(tier[b], score[b], tie[b]);
  });

  std::vector<std::size_t> covering;
  for (std::size_t b : bases) {
    if (tier[b] == 0 && score[b] == 0) break;
    covering.clear();
    for (std::size_t j = 0; j < L; ++j) {
      // the read starting at b - j covers b at offset j
      covering.push_back(j);
    }
    shuffle(covering, rng);
    for (std::size_t j : covering) {
      if (st.base_left(b) == 0) break;
      const std::size_t r = st.read_at(b + g * L - j);
      st.erase(r, j);
    }
  }
}

} // namespace

SimulatedReads apply_erasures(const CircularSequence& truth, const SimulatedReads& noiseless,
                              std::size_t D, const ErasureStrategy& strategy) {
  const ReadSet& rs = noiseless.reads;
  if (D >= rs.L()) {
    throw InvalidArgument("erasure budget D=" + std::to_string(D) + " must be below L=" +
                          std::to_string(rs.L()));
  }
  if (noiseless.origin.size() != rs.G() || truth.length() != rs.G()) {
    throw InvalidArgument("apply_erasures needs the truth and one origin per read");
  }
  for (const auto& r : rs.reads()) {
    if (r.erasure_count() != 0) {
      throw InvalidArgument("apply_erasures expects a noiseless read set");
    }
  }
  ErasureState st(noiseless, D);
  if (D > 0) {
    Rng rng(strategy.seed);
    switch (strategy.kind) {
    case ErasureStrategy::Kind::suffix_erase: suffix_erase(st, D); break;
    case ErasureStrategy::Kind::random_budgeted: random_budgeted(st, D, rng); break;
    case ErasureStrategy::Kind::repeat_targeted: repeat_targeted(st, truth, D, rng); break;
    }
  }
  return std::move(st).finish(rs);
}

BudgetReport validate_erasure_budget(const ReadSet& reads, std::size_t D) {
  BudgetReport out;
  for (std::size_t i = 0; i < reads.size(); ++i) {
    if (reads[i].erasure_count() > D) {
      out.reads_over_budget.push_back(i);
    }
  }
  out.valid = out.reads_over_budget.empty();
  return out;
}

BudgetReport validate_erasure_budget(const ReadSet& reads, const CircularSequence& truth,
                                     const std::vector<std::size_t>& origin, std::size_t D) {
  BudgetReport out = validate_erasure_budget(reads, D);
  const std::size_t g = truth.length();
  if (origin.size() != reads.size() || reads.size() != g) {
    throw InvalidArgument("validate_erasure_budget: need one origin per read and G reads");
  }
  out.bases_checked = true;
  std::vector<std::size_t> per_base(g, 0);
  for (std::size_t i = 0; i < reads.size(); ++i) {
    bool mismatch = false;
    for (std::size_t j = 0; j < reads.L(); ++j) {
      const std::size_t b = (origin[i] + j) % g;
      if (reads[i].erased(j)) {
        ++per_base[b];
      } else if (reads[i][j] != truth[b]) {
        mismatch = true;
      }
    }
    if (mismatch) out.reads_mismatching.push_back(i);
  }
  for (std::size_t b = 0; b < g; ++b) {
    if (per_base[b] > D) out.bases_over_budget.push_back(b);
  }
  out.valid = out.reads_over_budget.empty() && out.bases_over_budget.empty() &&
              out.reads_mismatching.empty();
  return out;
}

void write_reads(std::ostream& out, const ReadSet& reads) {
  out << format_reads(reads);
}

std::string format_reads(const ReadSet& reads) {
  std::string out = "#spectrum L=" + std::to_string(reads.L()) + " D=" + std::to_string(reads.D()) +
                    " G=" + std::to_string(reads.G()) + " circular=1 seed=" +
                    std::to_string(reads.seed()) + "\n";
  out.reserve(out.size() + reads.G() * (reads.L() + 1));
  for (const auto& r : reads.reads()) {
    out += r.str();
    out += '\n';
  }
  return out;
}

namespace {

std::uint64_t header_field(std::string_view header, std::string_view key) {
  const std::string pattern = " " + std::string(key) + "=";
  const auto at = header.find(pattern);
  if (at == std::string_view::npos) {
    throw ParseError("reads header lacks " + std::string(key) + "=");
  }
  const char* first = header.data() + at + pattern.size();
  const char* last = header.data() + header.size();
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || (ptr != last && *ptr != ' ')) {
    throw ParseError("reads header has a malformed " + std::string(key) + " value");
  }
  return value;
}

} // namespace

ReadSet parse_reads(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = eol + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || !lines[0].starts_with("#spectrum")) {
    throw ParseError("reads file must start with a '#spectrum' header");
  }
  const std::string_view header = lines[0];
  const auto L = static_cast<std::size_t>(header_field(header, "L"));
  const auto D = static_cast<std::size_t>(header_field(header, "D"));
  const auto G = static_cast<std::size_t>(header_field(header, "G"));
  const auto seed = header_field(header, "seed");
  if (header_field(header, "circular") != 1) {
    throw ParseError("only circular=1 read sets are supported");
  }
  if (lines.size() - 1 != G) {
    throw ParseError("header declares G=" + std::to_string(G) + " reads but file has " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<ErasableString> reads;
  reads.reserve(G);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != L) {
      throw ParseError("read on line " + std::to_string(i + 1) + " has length " +
                       std::to_string(lines[i].size()) + ", expected L=" + std::to_string(L));
    }
    for (char c : lines[i]) {
      if (!is_base(c) && c != kErased) {
        throw ParseError("illegal read symbol '" + std::string(1, c) + "' on line " +
                         std::to_string(i + 1));
      }
    }
    reads.emplace_back(std::string(lines[i]));
  }
  if (L == 0) {
    throw ParseError("L must be positive");
  }
  return ReadSet(std::move(reads), L, D, seed);
}

} // namespace spectra
