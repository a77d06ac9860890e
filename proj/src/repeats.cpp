#include "spectra/repeats.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace spectra {

namespace {

// Enumerating every chord pair is quadratic; above this many chords the
// witness is whichever one the linear decision procedure found.
constexpr std::size_t kWitnessEnumerationLimit = 3000;

} // namespace

RepeatIndex::RepeatIndex(const CircularSequence& seq)
    : seq_(seq), sa_(CircularSuffixArray::build(seq.str())) {}

std::size_t RepeatIndex::lcp(std::size_t i, std::size_t j) const {
  const std::size_t g = seq_.length();
  const std::string& s = seq_.str();
  std::size_t h = 0;
  i %= g;
  j %= g;
  while (h < g && s[(i + h) % g] == s[(j + h) % g]) {
    ++h;
  }
  return h;
}

std::vector<RepeatPair> RepeatIndex::maximal_repeats(std::size_t min_length) const {
  const std::size_t g = seq_.length();
  const std::string& s = seq_.str();
  min_length = std::max<std::size_t>(min_length, 1);
  std::vector<RepeatPair> out;
  std::size_t lo = 0;
  for (std::size_t i = 1; i <= g; ++i) {
    if (i < g && sa_.lcp[i] >= min_length) {
      continue;
    }
    // group is ranks [lo, i)
    for (std::size_t a = lo; a + 1 < i; ++a) {
      std::size_t run = g;
      const std::size_t pa = sa_.order[a];
      const char left_a = s[(pa + g - 1) % g];
      for (std::size_t b = a + 1; b < i; ++b) {
        run = std::min<std::size_t>(run, sa_.lcp[b]);
        const std::size_t pb = sa_.order[b];
        if (run >= g || s[(pb + g - 1) % g] == left_a) {
          continue;
        }
        out.push_back(RepeatPair{std::min(pa, pb), std::max(pa, pb), run});
      }
    }
    lo = i;
  }
  std::sort(out.begin(), out.end(), [](const RepeatPair& x, const RepeatPair& y) {
    return std::tie(x.pos1, x.pos2) < std::tie(y.pos1, y.pos2);
  });
  return out;
}

bool RepeatIndex::sharing_or_chords(std::size_t m, std::vector<Chord>& chords,
                                    std::optional<std::pair<Chord, Chord>>* shared) const {
  const std::size_t g = seq_.length();
  const std::string& s = seq_.str();
  chords.clear();
  std::size_t lo = 0;
  for (std::size_t i = 1; i <= g; ++i) {
    if (i < g && sa_.lcp[i] >= m) {
      continue;
    }
    const std::size_t size = i - lo;
    if (size >= 2) {
      std::array<std::size_t, 4> count{};
      for (std::size_t r = lo; r < i; ++r) {
        ++count[base_code(s[(sa_.order[r] + g - 1) % g])];
      }
      for (std::size_t r = lo; r < i; ++r) {
        const std::size_t t = sa_.order[r];
        const char left = s[(t + g - 1) % g];
        if (size - count[base_code(left)] < 2) {
          continue;
        }
        // t has two partners with a different left symbol; identical
        // rotations always share their left symbol, so both are real chords.
        if (shared != nullptr) {
          std::vector<std::size_t> partners;
          for (std::size_t q = lo; q < i && partners.size() < 2; ++q) {
            const std::size_t u = sa_.order[q];
            if (s[(u + g - 1) % g] != left) {
              partners.push_back(u);
            }
          }
          *shared = std::make_pair(Chord{std::min(t, partners[0]), std::max(t, partners[0])},
                                   Chord{std::min(t, partners[1]), std::max(t, partners[1])});
        }
        return true;
      }
      if (size == 2) {
        const std::size_t x = sa_.order[lo], y = sa_.order[lo + 1];
        if (s[(x + g - 1) % g] != s[(y + g - 1) % g]) {
          chords.push_back(Chord{std::min(x, y), std::max(x, y)});
        }
      }
    }
    lo = i;
  }
  return false;
}

std::optional<std::pair<RepeatIndex::Chord, RepeatIndex::Chord>>
RepeatIndex::crossing_pair(std::vector<Chord> chords) const {
  // Endpoints are pairwise distinct here. Chords are non-crossing exactly
  // when the endpoints nest like parentheses.
  const std::size_t g = seq_.length();
  std::vector<std::int64_t> at(g, -1);
  for (std::size_t c = 0; c < chords.size(); ++c) {
    at[chords[c].x] = static_cast<std::int64_t>(c);
    at[chords[c].y] = static_cast<std::int64_t>(c);
  }
  std::vector<std::size_t> stack;
  for (std::size_t p = 0; p < g; ++p) {
    if (at[p] < 0) {
      continue;
    }
    const auto c = static_cast<std::size_t>(at[p]);
    if (chords[c].x == p) {
      stack.push_back(c);
    } else {
      if (stack.back() != c) {
        return std::make_pair(chords[stack.back()], chords[c]);
      }
      stack.pop_back();
    }
  }
  return std::nullopt;
}

bool RepeatIndex::has_interleaved(std::size_t m) const {
  if (m == 0) {
    return true;
  }
  std::vector<Chord> chords;
  if (sharing_or_chords(m, chords, nullptr)) {
    return true;
  }
  return crossing_pair(std::move(chords)).has_value();
}

InterleavedWitness RepeatIndex::make_witness(Chord p, Chord q) const {
  RepeatPair a{p.x, p.y, lcp(p.x, p.y)};
  RepeatPair b{q.x, q.y, lcp(q.x, q.y)};
  auto w = interleave(a, b, seq_.length());
  // Callers only pass chords that cross or share one endpoint.
  return *w;
}

RepeatReport RepeatIndex::interleaved() const {
  RepeatReport report;
  if (!seq_.theorem_grade()) {
    report.warnings.push_back("sequence has minimum period " +
                              std::to_string(seq_.minimum_period()) + " < G = " +
                              std::to_string(seq_.length()) +
                              "; repeat thresholds assume an aperiodic genome");
  }
  const std::size_t g = seq_.length();
  std::size_t hi = 0;
  for (std::size_t i = 1; i < g; ++i) {
    if (sa_.lcp[i] < g) {
      hi = std::max<std::size_t>(hi, sa_.lcp[i]);
    }
  }
  std::size_t lo = 0; // has_interleaved(lo) holds
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (has_interleaved(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  report.l_inter = lo;
  report.l_crit = lo + 1;
  if (lo == 0) {
    return report;
  }

  auto pairs = maximal_repeats(lo);
  if (pairs.size() <= kWitnessEnumerationLimit) {
    std::optional<InterleavedWitness> best;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        auto w = interleave(pairs[i], pairs[j], g);
        if (!w) {
          continue;
        }
        if (!best || std::tie(w->a1, w->b1, w->a2, w->b2) <
                         std::tie(best->a1, best->b1, best->a2, best->b2)) {
          best = w;
        }
      }
    }
    report.witness = best;
    return report;
  }
  std::vector<Chord> chords;
  std::optional<std::pair<Chord, Chord>> shared;
  if (sharing_or_chords(lo, chords, &shared)) {
    report.witness = make_witness(shared->first, shared->second);
  } else {
    auto crossing = crossing_pair(std::move(chords));
    report.witness = make_witness(crossing->first, crossing->second);
  }
  return report;
}

std::vector<std::size_t> RepeatIndex::exact_multiplicity_profile() const {
  const std::size_t g = seq_.length();
  std::vector<std::size_t> best(g + 1, 1);
  // Bottom-up traversal of lcp intervals.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}}; // (lcp value, left rank)
  for (std::size_t i = 1; i <= g; ++i) {
    const std::size_t cur = i < g ? std::min<std::size_t>(sa_.lcp[i], g) : 0;
    std::size_t left = i - 1;
    while (stack.back().first > cur) {
      auto [value, l] = stack.back();
      stack.pop_back();
      best[value] = std::max(best[value], i - l);
      left = l;
    }
    if (stack.back().first < cur) {
      stack.emplace_back(cur, left);
    }
  }
  for (std::size_t t = g; t-- > 0;) {
    best[t] = std::max(best[t], best[t + 1]);
  }
  best[0] = g;
  return best;
}

std::optional<InterleavedWitness> interleave(const RepeatPair& p, const RepeatPair& q,
                                             std::size_t genome_length) {
  const std::size_t g = genome_length;
  std::optional<InterleavedWitness> best;
  auto lift = [g](std::size_t v, std::size_t above) {
    // Smallest representative of v that is strictly greater than `above`.
    std::size_t r = v % g;
    if (r > above) {
      return r;
    }
    return r + ((above - r) / g + 1) * g;
  };
  auto consider = [&](const RepeatPair& a, const RepeatPair& b) {
    for (std::size_t first : {a.pos1, a.pos2}) {
      const std::size_t other = first == a.pos1 ? a.pos2 : a.pos1;
      const std::size_t a1 = first;
      const std::size_t a2 = lift(other, a1);
      for (std::size_t bstart : {b.pos1, b.pos2}) {
        const std::size_t bother = bstart == b.pos1 ? b.pos2 : b.pos1;
        for (std::size_t shift : {std::size_t{0}, g}) {
          const std::size_t b1 = bstart + shift;
          const std::size_t b2 = lift(bother, b1);
          if (a1 < b1 && b1 <= a2 && a2 < b2 && b2 - a1 < g) {
            InterleavedWitness w{a, b, a1, a2, b1, b2, std::min(a.length, b.length)};
            if (!best ||
                std::tie(w.a1, w.b1, w.a2, w.b2) < std::tie(best->a1, best->b1, best->a2, best->b2)) {
              best = w;
            }
          }
        }
      }
    }
  };
  consider(p, q);
  consider(q, p);
  return best;
}

std::vector<RepeatPair> maximal_repeats(const CircularSequence& seq, std::size_t min_length) {
  return RepeatIndex(seq).maximal_repeats(min_length);
}

RepeatReport interleaved_length(const CircularSequence& seq) {
  return RepeatIndex(seq).interleaved();
}

std::size_t l_crit(const CircularSequence& seq) {
  return RepeatIndex(seq).interleaved().l_crit;
}

} // namespace spectra
