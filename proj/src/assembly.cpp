#include "spectra/assembly.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "spectra/errors.hpp"
#include "spectra/random.hpp"

namespace spectra {

namespace {

// Identical reads collapse into one class; members keep their input order.
struct ReadClasses {
  std::vector<std::string> text;
  std::vector<std::vector<std::size_t>> members;
};

ReadClasses classify(const ReadSet& reads) {
  std::map<std::string, std::vector<std::size_t>> by_text;
  for (std::size_t i = 0; i < reads.size(); ++i) {
    by_text[reads[i].str()].push_back(i);
  }
  ReadClasses out;
  for (auto& [t, m] : by_text) {
    out.text.push_back(t);
    out.members.push_back(std::move(m));
  }
  return out;
}

void check_shape(const ReadSet& reads, std::size_t g) {
  if (reads.size() != g) {
    throw InvalidArgument("read set has " + std::to_string(reads.size()) +
                          " reads but the genome length is " + std::to_string(g));
  }
  if (reads.L() > g) {
    throw InvalidArgument("read length L=" + std::to_string(reads.L()) +
                          " exceeds the genome length " + std::to_string(g));
  }
}

Assembly make_assembly(const ReadClasses& cls, const std::vector<std::size_t>& class_at,
                       const std::vector<std::size_t>& columns, std::size_t n_reads) {
  Assembly a;
  a.sigma.assign(n_reads, 0);
  std::vector<std::size_t> next(cls.text.size(), 0);
  for (std::size_t p = 0; p < class_at.size(); ++p) {
    const std::size_t c = class_at[p];
    a.sigma[cls.members[c][next[c]++]] = p;
  }
  a.consistent = true;
  a.columns = columns;
  return a;
}

// Positions matched to classes with capacities, ignoring column budgets.
bool perfect_matching(const std::vector<std::vector<std::size_t>>& compat_at,
                      const std::vector<std::size_t>& capacity, std::size_t n_classes) {
  const std::size_t g = compat_at.size();
  std::vector<std::vector<std::size_t>> holders(n_classes);
  std::vector<std::size_t> stamp(n_classes, 0);
  std::size_t round = 0;
  auto augment = [&](auto&& self, std::size_t p) -> bool {
    for (std::size_t c : compat_at[p]) {
      if (stamp[c] == round) continue;
      stamp[c] = round;
      if (holders[c].size() < capacity[c]) {
        holders[c].push_back(p);
        return true;
      }
      for (std::size_t& q : holders[c]) {
        if (self(self, q)) {
          q = p;
          return true;
        }
      }
    }
    return false;
  };
  for (std::size_t p = 0; p < g; ++p) {
    ++round;
    if (!augment(augment, p)) return false;
  }
  return true;
}

} // namespace

ConsistencyResult check_consistency(const CircularSequence& candidate, const ReadSet& reads,
                                    std::size_t D, const SearchOptions& options) {
  const std::size_t g = candidate.length();
  check_shape(reads, g);
  const std::size_t L = reads.L();
  for (const auto& r : reads.reads()) {
    if (r.erasure_count() > D) return {};
  }
  const ReadClasses cls = classify(reads);
  const std::size_t nc = cls.text.size();
  std::vector<std::size_t> count(nc);
  for (std::size_t c = 0; c < nc; ++c) count[c] = cls.members[c].size();

  const std::string& s = candidate.str();
  std::vector<std::vector<std::size_t>> compat_at(g);
  std::vector<std::size_t> avail(nc, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    const std::string& r = cls.text[c];
    for (std::size_t p = 0; p < g; ++p) {
      std::size_t j = 0;
      for (std::size_t q = p; j < L; ++j, q = q + 1 == g ? 0 : q + 1) {
        if (r[j] != kErased && r[j] != s[q]) break;
      }
      if (j == L) {
        compat_at[p].push_back(c);
        ++avail[c];
      }
    }
    if (avail[c] < count[c]) return {};
  }
  if (!perfect_matching(compat_at, count, nc)) return {};

  // Left-to-right placement with per-column erasure budgets. avail[c] counts
  // unfilled positions still open to class c; a class with fewer open
  // positions than unplaced reads is a dead end.
  std::vector<std::size_t> columns(g, 0), class_at(g, 0);
  struct Frame {
    std::size_t next = 0;
    long placed = -1;
  };
  std::vector<Frame> stack(1);
  std::uint64_t nodes = 0;

  auto erasures = [&](std::size_t p, std::size_t c, int delta) {
    const std::string& r = cls.text[c];
    for (std::size_t j = 0; j < L; ++j) {
      if (r[j] == kErased) columns[(p + j) % g] += delta;
    }
  };
  auto fits = [&](std::size_t p, std::size_t c) {
    const std::string& r = cls.text[c];
    for (std::size_t j = 0; j < L; ++j) {
      if (r[j] == kErased && columns[(p + j) % g] + 1 > D) return false;
    }
    return true;
  };

  while (!stack.empty()) {
    const std::size_t p = stack.size() - 1;
    Frame& f = stack.back();
    if (f.placed >= 0) {
      const auto c = static_cast<std::size_t>(f.placed);
      erasures(p, c, -1);
      ++count[c];
      f.placed = -1;
    } else {
      for (std::size_t c : compat_at[p]) --avail[c];
    }
    if (++nodes > options.max_nodes) {
      throw InfeasibleError("consistency search exceeded " + std::to_string(options.max_nodes) +
                            " nodes");
    }
    bool dead = false;
    for (std::size_t c : compat_at[p]) {
      // position p is being decided now; it cannot serve any other class
      if (count[c] > avail[c] + 1) dead = true;
    }
    std::size_t chosen = compat_at[p].size();
    if (!dead) {
      for (std::size_t i = f.next; i < compat_at[p].size(); ++i) {
        const std::size_t c = compat_at[p][i];
        if (count[c] == 0 || !fits(p, c)) continue;
        bool ok = true;
        for (std::size_t o : compat_at[p]) {
          if (o != c && count[o] > avail[o]) ok = false;
        }
        if (!ok) continue;
        chosen = i;
        break;
      }
    }
    if (chosen == compat_at[p].size()) {
      for (std::size_t c : compat_at[p]) ++avail[c];
      stack.pop_back();
      continue;
    }
    const std::size_t c = compat_at[p][chosen];
    f.next = chosen + 1;
    f.placed = static_cast<long>(c);
    --count[c];
    erasures(p, c, +1);
    class_at[p] = c;
    if (p + 1 == g) {
      return {true, make_assembly(cls, class_at, columns, reads.size())};
    }
    stack.emplace_back();
  }
  return {};
}

namespace {

enum class Outcome { found, exhausted, out_of_budget };

// One left-to-right search with a fixed class order.
struct PlacementSearch {
  const ReadClasses& cls;
  std::size_t g, L, D;

  Outcome run(const std::vector<std::size_t>& order, std::uint64_t budget,
              std::optional<FoundAssembly>& result) const {
    const std::size_t nc = cls.text.size();
    std::vector<std::size_t> count(nc), erased(nc, 0);
    std::size_t remaining = 0; // erasures in unplaced reads
    for (std::size_t c = 0; c < nc; ++c) {
      count[c] = cls.members[c].size();
      for (char ch : cls.text[c]) erased[c] += ch == kErased;
      remaining += count[c] * erased[c];
    }
    const std::size_t pinned = order[0];
    std::vector<char> sym(g, 0);
    std::vector<std::size_t> fixed(g, 0), columns(g, 0), class_at(g, 0);
    // spare erasure budget over columns that unplaced reads can still reach
    std::size_t spare = g * D;

    auto fits = [&](std::size_t p, std::size_t c) {
      const std::string& r = cls.text[c];
      for (std::size_t j = 0; j < L; ++j) {
        const std::size_t q = (p + j) % g;
        if (r[j] == kErased) {
          if (columns[q] + 1 > D) return false;
        } else if (sym[q] != 0 && sym[q] != r[j]) {
          return false;
        }
      }
      return true;
    };
    auto place = [&](std::size_t p, std::size_t c, bool add) {
      const std::string& r = cls.text[c];
      if (!add && p + 1 >= L) spare += D - columns[p];
      for (std::size_t j = 0; j < L; ++j) {
        const std::size_t q = (p + j) % g;
        if (r[j] == kErased) {
          if (add) {
            ++columns[q];
          } else {
            --columns[q];
          }
        } else if (add) {
          sym[q] = r[j];
          ++fixed[q];
        } else if (--fixed[q] == 0) {
          sym[q] = 0;
        }
      }
      if (add) {
        spare -= erased[c];
        remaining -= erased[c];
        --count[c];
        // column p is covered by no later read once p >= L-1
        if (p + 1 >= L) spare -= D - columns[p];
      } else {
        spare += erased[c];
        remaining += erased[c];
        ++count[c];
      }
    };

    struct Frame {
      std::size_t next = 0;
      long placed = -1;
    };
    std::vector<Frame> stack(1);
    std::uint64_t nodes = 0;
    while (!stack.empty()) {
      const std::size_t p = stack.size() - 1;
      Frame& f = stack.back();
      if (f.placed >= 0) {
        place(p, static_cast<std::size_t>(f.placed), false);
        f.placed = -1;
      }
      if (++nodes > budget) return Outcome::out_of_budget;
      const std::size_t end = p == 0 ? 1 : nc;
      std::size_t chosen = end;
      for (std::size_t i = f.next; i < end; ++i) {
        const std::size_t c = p == 0 ? pinned : order[i];
        if (count[c] > 0 && fits(p, c)) {
          place(p, c, true);
          if (remaining <= spare) {
            chosen = i;
            break;
          }
          place(p, c, false);
        }
      }
      if (chosen == end) {
        stack.pop_back();
        continue;
      }
      const std::size_t c = p == 0 ? pinned : order[chosen];
      f.next = chosen + 1;
      f.placed = static_cast<long>(c);
      class_at[p] = c;
      if (p + 1 == g) {
        Assembly a = make_assembly(cls, class_at, columns, g);
        std::string consensus(sym.begin(), sym.end());
        result.emplace(FoundAssembly{std::move(a), CircularSequence(std::move(consensus))});
        return Outcome::found;
      }
      stack.emplace_back();
    }
    return Outcome::exhausted;
  }
};

} // namespace

FoundAssembly find_consistent_assembly(const ReadSet& reads, std::size_t D,
                                       const SearchOptions& options) {
  const std::size_t g = reads.size();
  const std::size_t L = reads.L();
  if (g == 0) throw InvalidArgument("read set is empty");
  if (L > g) throw InvalidArgument("read length exceeds the number of reads");
  if (D >= L) {
    throw InvalidArgument("erasure budget D=" + std::to_string(D) + " must be below L=" +
                          std::to_string(L));
  }
  for (std::size_t i = 0; i < g; ++i) {
    if (reads[i].erasure_count() > D) {
      throw NoConsistentAssembly("read " + std::to_string(i) + " has more than D=" +
                                 std::to_string(D) + " erasures");
    }
  }
  const ReadClasses cls = classify(reads);
  const std::size_t nc = cls.text.size();
  PlacementSearch search{cls, g, L, D};

  // Restarts with doubling budgets. Attempt 0 uses the caller's order; later
  // attempts reshuffle from a seed derived from it. Any exhaustive attempt
  // settles the question, whatever its order.
  std::uint64_t spent = 0;
  std::uint64_t slice = std::min<std::uint64_t>(options.max_nodes, 100'000);
  Rng reseed(options.shuffle_seed.value_or(0) ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t attempt = 0; spent < options.max_nodes; ++attempt) {
    std::vector<std::size_t> order(nc);
    std::iota(order.begin(), order.end(), 0);
    if (attempt > 0 || options.shuffle_seed) {
      Rng rng(attempt == 0 ? *options.shuffle_seed : reseed());
      shuffle(order, rng);
    }
    const std::uint64_t budget = std::min(slice, options.max_nodes - spent);
    std::optional<FoundAssembly> result;
    switch (search.run(order, budget, result)) {
    case Outcome::found: return std::move(*result);
    case Outcome::exhausted:
      throw NoConsistentAssembly("no assembly is consistent with the reads at D=" +
                                 std::to_string(D));
    case Outcome::out_of_budget: break;
    }
    spent += budget;
    slice *= 2;
  }
  throw NoConsistentAssembly("assembly search exceeded " + std::to_string(options.max_nodes) +
                             " nodes");
}

CircularSequence consensus_sequence(const Assembly& assembly, const ReadSet& reads,
                                    std::size_t D) {
  const std::size_t g = reads.size();
  if (assembly.sigma.size() != g) {
    throw InvalidArgument("assembly does not place every read");
  }
  std::vector<char> seen(g, 0);
  std::string out(g, 0);
  std::vector<std::size_t> erased(g, 0);
  for (std::size_t i = 0; i < g; ++i) {
    const std::size_t p = assembly.sigma[i];
    if (p >= g || seen[p]) throw InvalidArgument("assembly is not a bijection");
    seen[p] = 1;
    for (std::size_t j = 0; j < reads.L(); ++j) {
      const std::size_t q = (p + j) % g;
      const char c = reads[i][j];
      if (c == kErased) {
        ++erased[q];
      } else if (out[q] == 0) {
        out[q] = c;
      } else if (out[q] != c) {
        throw InvalidArgument("column " + std::to_string(q) + " disagrees");
      }
    }
  }
  for (std::size_t q = 0; q < g; ++q) {
    if (erased[q] > D) {
      throw InvalidArgument("column " + std::to_string(q) + " has more than D erasures");
    }
    if (out[q] == 0) {
      throw InvalidArgument("column " + std::to_string(q) + " is fully erased");
    }
  }
  return CircularSequence(std::move(out));
}

MBound best_available_bound(const ApproxRepeatAnalyzer& analyzer, std::size_t d,
                            std::size_t length) {
  try {
    return analyzer.bounds(d, length, ApproxMode::exact);
  } catch (const InfeasibleError&) {
    return analyzer.bounds(d, length, ApproxMode::bracket);
  }
}

CorrectedSpectrum correct_spectrum(const ReadSet& reads, std::size_t D, std::size_t k,
                                   const SearchOptions& options, const ApproxConfig& config) {
  if (k + 1 > reads.L()) {
    throw InvalidArgument("k + 1 = " + std::to_string(k + 1) + " exceeds L=" +
                          std::to_string(reads.L()));
  }
  FoundAssembly found = find_consistent_assembly(reads, D, options);
  ApproxRepeatAnalyzer analyzer(found.consensus, config);
  CorrectedSpectrum out{k, {}, found.consensus, false, {}, {}};
  out.m = best_available_bound(analyzer, D, k + 1);
  out.guaranteed = reads.L() > k + D * out.m.upper;
  if (!out.guaranteed) {
    out.warnings.push_back("L=" + std::to_string(reads.L()) + " does not exceed k + D*M = " +
                           std::to_string(k + D * out.m.upper) +
                           "; corrected spectrum is not guaranteed");
  }
  const std::size_t g = found.consensus.length();
  out.spectrum.reserve(g);
  for (std::size_t i = 0; i < g; ++i) out.spectrum.push_back(found.consensus.window(i, k + 1));
  std::sort(out.spectrum.begin(), out.spectrum.end());
  return out;
}

} // namespace spectra
