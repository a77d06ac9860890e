#include "spectra/approx.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

constexpr std::uint64_t kLowBits = 0x5555555555555555ULL;
constexpr std::size_t kColoringMaxNeighborhood = 512;

/// Length-l windows of a circular sequence packed 2 bits per base.
class PackedWindows {
public:
  PackedWindows(const std::string& s, std::size_t length)
      : count_(s.size()), length_(length), words_((length + 31) / 32),
        data_(count_ * words_, 0) {
    for (std::size_t i = 0; i < count_; ++i) {
      pack(s, i, &data_[i * words_]);
    }
  }

  std::size_t count() const noexcept { return count_; }
  std::size_t words() const noexcept { return words_; }
  const std::uint64_t* at(std::size_t i) const noexcept { return &data_[i * words_]; }

  static std::size_t distance(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t words) noexcept {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t x = a[w] ^ b[w];
      d += static_cast<std::size_t>(std::popcount((x | (x >> 1)) & kLowBits));
    }
    return d;
  }

  std::size_t distance(std::size_t i, std::size_t j) const noexcept {
    return distance(at(i), at(j), words_);
  }

  /// Symbol code at offset k of window i.
  std::uint8_t code(std::size_t i, std::size_t k) const noexcept {
    return static_cast<std::uint8_t>((at(i)[k / 32] >> (2 * (k % 32))) & 3U);
  }

private:
  void pack(const std::string& s, std::size_t start, std::uint64_t* out) const {
    const std::size_t g = s.size();
    for (std::size_t k = 0; k < length_; ++k) {
      const std::uint64_t c = base_code(s[(start + k) % g]);
      out[k / 32] |= c << (2 * (k % 32));
    }
  }

  std::size_t count_, length_, words_;
  std::vector<std::uint64_t> data_;
};

/// Runs body(begin, end) over [0, n) on up to `threads` workers.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([=, &body] { body(b, e); });
  }
  for (auto& th : pool) th.join();
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

double neighborhood_size(std::size_t positions, std::size_t d) {
  double total = 0.0, pow3 = 1.0;
  for (std::size_t j = 0; j <= d && j <= positions; ++j) {
    total += binomial(positions, j) * pow3;
    pow3 *= 3.0;
  }
  return total;
}

} // namespace

struct ApproxRepeatAnalyzer::Impl {
  CircularSequence seq;
  ApproxConfig config;
  mutable std::unique_ptr<RepeatIndex> index;
  mutable std::unique_ptr<RepeatReport> report;
  mutable std::vector<std::size_t> profile;
  // (d, length, mode) -> bounds already computed
  mutable std::map<std::tuple<std::size_t, std::size_t, int>, MBound> memo;
  mutable std::mutex mutex;

  Impl(CircularSequence s, ApproxConfig c) : seq(std::move(s)), config(c) {}

  const RepeatIndex& repeat_index() const {
    std::lock_guard lock(mutex);
    if (!index) {
      index = std::make_unique<RepeatIndex>(seq);
    }
    return *index;
  }

  const std::vector<std::size_t>& multiplicity_profile() const {
    const RepeatIndex& idx = repeat_index();
    std::lock_guard lock(mutex);
    if (profile.empty()) {
      profile = idx.exact_multiplicity_profile();
    }
    return profile;
  }

  std::size_t exact_multiplicity(std::size_t length) const {
    const auto& p = multiplicity_profile();
    return p[std::min(length, p.size() - 1)];
  }

  std::size_t full_enumeration(const PackedWindows& win, std::size_t d, std::size_t length) const {
    const std::size_t centers = std::size_t{1} << (2 * length);
    std::mutex m;
    std::size_t best = 0;
    parallel_chunks(centers, config.threads, [&](std::size_t b, std::size_t e) {
      std::size_t local = 0;
      for (std::size_t c = b; c < e; ++c) {
        // Center code c packs symbol k at bits 2k, matching PackedWindows.
        const std::uint64_t center = c;
        std::size_t covered = 0;
        for (std::size_t i = 0; i < win.count(); ++i) {
          covered += PackedWindows::distance(&center, win.at(i), 1) <= d;
        }
        local = std::max(local, covered);
      }
      std::lock_guard lock(m);
      best = std::max(best, local);
    });
    return best;
  }

  /// Candidate-center enumeration anchored on each window. Returns nullopt
  /// when the candidate count exceeds the configured cap.
  std::optional<std::size_t> neighborhood_enumeration(const PackedWindows& win, std::size_t d,
                                                      std::size_t length) const {
    const std::size_t g = win.count();
    // Budget pass.
    std::vector<std::size_t> relevant_count(g, 0), diff_positions(g, 0);
    std::vector<double> cost(g, 0.0);
    parallel_chunks(g, config.threads, [&](std::size_t b, std::size_t e) {
      std::vector<char> differs(length);
      for (std::size_t a = b; a < e; ++a) {
        std::fill(differs.begin(), differs.end(), 0);
        std::size_t rel = 0;
        for (std::size_t j = 0; j < g; ++j) {
          if (win.distance(a, j) > 2 * d) continue;
          ++rel;
          for (std::size_t k = 0; k < length; ++k) {
            if (win.code(j, k) != win.code(a, k)) differs[k] = 1;
          }
        }
        relevant_count[a] = rel;
        diff_positions[a] = static_cast<std::size_t>(std::count(differs.begin(), differs.end(), 1));
        cost[a] = neighborhood_size(diff_positions[a], d);
      }
    });
    double total = 0.0;
    for (double c : cost) total += c;
    if (total > static_cast<double>(config.max_neighborhood_centers)) {
      return std::nullopt;
    }

    std::vector<std::size_t> order(g);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return relevant_count[x] > relevant_count[y];
    });

    std::size_t best = 1;
    for (std::size_t a : order) {
      if (relevant_count[a] <= best) {
        break; // sorted descending: no later anchor can beat best
      }
      std::vector<std::size_t> rel;
      for (std::size_t j = 0; j < g; ++j) {
        if (win.distance(a, j) <= 2 * d) rel.push_back(j);
      }
      // Positions where relevant windows disagree with the anchor, with the
      // alternative symbols seen there.
      std::vector<std::size_t> pos;
      std::vector<std::vector<std::uint8_t>> alts;
      for (std::size_t k = 0; k < length; ++k) {
        std::uint8_t seen = 0;
        const std::uint8_t own = win.code(a, k);
        for (std::size_t j : rel) {
          const std::uint8_t c = win.code(j, k);
          if (c != own) seen |= static_cast<std::uint8_t>(1U << c);
        }
        if (seen != 0) {
          pos.push_back(k);
          std::vector<std::uint8_t> options;
          for (std::uint8_t c = 0; c < 4; ++c) {
            if (seen & (1U << c)) options.push_back(c);
          }
          alts.push_back(std::move(options));
        }
      }
      std::vector<std::uint64_t> center(win.at(a), win.at(a) + win.words());
      auto count_covered = [&] {
        std::size_t covered = 0;
        for (std::size_t j : rel) {
          covered += PackedWindows::distance(center.data(), win.at(j), win.words()) <= d;
        }
        return covered;
      };
      auto set_code = [&](std::size_t k, std::uint64_t c) {
        std::uint64_t& w = center[k / 32];
        const unsigned shift = static_cast<unsigned>(2 * (k % 32));
        w = (w & ~(std::uint64_t{3} << shift)) | (c << shift);
      };
      auto recurse = [&](auto&& self, std::size_t from, std::size_t budget) -> void {
        best = std::max(best, count_covered());
        if (budget == 0) return;
        for (std::size_t p = from; p < pos.size(); ++p) {
          const std::size_t k = pos[p];
          const std::uint64_t own = win.code(a, k);
          for (std::uint8_t c : alts[p]) {
            set_code(k, c);
            self(self, p + 1, budget - 1);
          }
          set_code(k, own);
        }
      };
      recurse(recurse, 0, d);
    }
    return best;
  }

  MBound pairwise_bracket(const PackedWindows& win, std::size_t d, std::size_t length) const {
    const std::size_t g = win.count();
    MBound out{d, length, 1, g, false, false};
    std::vector<std::size_t> within_d(g, 0), within_2d(g, 0);
    parallel_chunks(g, config.threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        std::size_t c1 = 0, c2 = 0;
        for (std::size_t j = 0; j < g; ++j) {
          const std::size_t dist = win.distance(i, j);
          c1 += dist <= d;
          c2 += dist <= 2 * d;
        }
        within_d[i] = c1;
        within_2d[i] = c2;
      }
    });
    out.lower = *std::max_element(within_d.begin(), within_d.end());

    // Any clique through v lives in N[v]; a greedy coloring of N[v] bounds it.
    std::vector<std::size_t> order(g);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return within_2d[x] > within_2d[y]; });
    std::size_t upper = out.lower;
    for (std::size_t v : order) {
      if (within_2d[v] <= upper) {
        break;
      }
      if (within_2d[v] > kColoringMaxNeighborhood) {
        upper = within_2d[v];
        continue;
      }
      std::vector<std::size_t> nbr;
      for (std::size_t j = 0; j < g; ++j) {
        if (win.distance(v, j) <= 2 * d) nbr.push_back(j);
      }
      const std::size_t n = nbr.size();
      std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
      std::vector<std::size_t> deg(n, 0);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
          if (win.distance(nbr[x], nbr[y]) <= 2 * d) {
            adj[x][y] = adj[y][x] = 1;
            ++deg[x];
            ++deg[y];
          }
        }
      }
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return deg[x] > deg[y]; });
      std::vector<std::size_t> color(n, std::numeric_limits<std::size_t>::max());
      std::size_t colors = 0;
      for (std::size_t x : idx) {
        std::vector<char> used(colors + 1, 0);
        for (std::size_t y = 0; y < n; ++y) {
          if (adj[x][y] && color[y] != std::numeric_limits<std::size_t>::max()) used[color[y]] = 1;
        }
        std::size_t c = 0;
        while (used[c]) ++c;
        color[x] = c;
        colors = std::max(colors, c + 1);
      }
      upper = std::max(upper, colors);
    }
    out.upper = upper;
    out.exact = out.lower == out.upper;
    return out;
  }

  MBound bounds(std::size_t d, std::size_t length, ApproxMode mode) const {
    const std::size_t g = seq.length();
    if (length == 0 || length > g) {
      throw InvalidArgument("window length " + std::to_string(length) + " outside [1, " +
                            std::to_string(g) + "]");
    }
    if (d >= length) {
      return MBound{d, length, g, g, true, false};
    }
    if (d == 0) {
      const std::size_t m = exact_multiplicity(length);
      return MBound{d, length, m, m, true, false};
    }
    if (mode == ApproxMode::exact) {
      const bool small_ball =
          length >= 32 || neighborhood_size(length, d) < static_cast<double>(std::size_t{1} << (2 * length));
      if (small_ball && g <= config.pairwise_max_genome) {
        PackedWindows win(seq.str(), length);
        if (auto m = neighborhood_enumeration(win, d, length)) {
          return MBound{d, length, *m, *m, true, false};
        }
      }
      if (length <= config.full_enumeration_max_length &&
          static_cast<double>(std::size_t{1} << (2 * length)) * static_cast<double>(g) <=
              static_cast<double>(config.max_full_enumeration_work)) {
        PackedWindows win(seq.str(), length);
        const std::size_t m = full_enumeration(win, d, length);
        return MBound{d, length, m, m, true, false};
      }
      if (!small_ball && g <= config.pairwise_max_genome) {
        PackedWindows win(seq.str(), length);
        if (auto m = neighborhood_enumeration(win, d, length)) {
          return MBound{d, length, *m, *m, true, false};
        }
      }
      throw InfeasibleError("exact M(" + std::to_string(d) + ", " + std::to_string(length) +
                            ") exceeds the configured enumeration budget; use bracket mode");
    }
    if (2 * d >= length) {
      // Every pair of windows is within 2d, so only the lower end needs work.
      if (g <= config.pairwise_max_genome) {
        PackedWindows win(seq.str(), length);
        std::size_t lower = 1;
        for (std::size_t i = 0; i < g; ++i) {
          std::size_t c = 0;
          for (std::size_t j = 0; j < g; ++j) c += win.distance(i, j) <= d;
          lower = std::max(lower, c);
        }
        return MBound{d, length, lower, g, lower == g, false};
      }
      const std::size_t m = exact_multiplicity(length);
      return MBound{d, length, m, g, m == g, true};
    }
    if (g <= config.pairwise_max_genome) {
      PackedWindows win(seq.str(), length);
      return pairwise_bracket(win, d, length);
    }
    const std::size_t m = exact_multiplicity(length);
    return MBound{d, length, m, g, m == g, true};
  }
};

ApproxRepeatAnalyzer::ApproxRepeatAnalyzer(CircularSequence seq, ApproxConfig config)
    : impl_(std::make_unique<Impl>(std::move(seq), config)) {}
ApproxRepeatAnalyzer::~ApproxRepeatAnalyzer() = default;
ApproxRepeatAnalyzer::ApproxRepeatAnalyzer(ApproxRepeatAnalyzer&&) noexcept = default;
ApproxRepeatAnalyzer& ApproxRepeatAnalyzer::operator=(ApproxRepeatAnalyzer&&) noexcept = default;

const CircularSequence& ApproxRepeatAnalyzer::sequence() const noexcept { return impl_->seq; }

const RepeatIndex& ApproxRepeatAnalyzer::repeat_index() const { return impl_->repeat_index(); }

const RepeatReport& ApproxRepeatAnalyzer::repeat_report() const {
  const RepeatIndex& idx = impl_->repeat_index();
  std::lock_guard lock(impl_->mutex);
  if (!impl_->report) {
    impl_->report = std::make_unique<RepeatReport>(idx.interleaved());
  }
  return *impl_->report;
}

MBound ApproxRepeatAnalyzer::bounds(std::size_t d, std::size_t length, ApproxMode mode) const {
  const auto key = std::make_tuple(d, length, static_cast<int>(mode));
  {
    std::lock_guard lock(impl_->mutex);
    if (auto it = impl_->memo.find(key); it != impl_->memo.end()) return it->second;
  }
  MBound b = impl_->bounds(d, length, mode);
  std::lock_guard lock(impl_->mutex);
  impl_->memo.emplace(key, b);
  return b;
}

NoisyThreshold ApproxRepeatAnalyzer::noisy_threshold(std::size_t D, ApproxMode mode) const {
  const RepeatReport& rep = repeat_report();
  const std::size_t g = impl_->seq.length();
  NoisyThreshold out;
  out.D = D;
  out.l_crit = rep.l_crit;
  out.warnings = rep.warnings;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t best_lo = kNone, best_hi = kNone;
  bool all_exact = true;
  bool hi_done = false;
  // f(k) = k + D*M(D, k+1) >= k + D because M >= 1, so once k + D reaches the
  // best value seen no later k can improve it.
  for (std::size_t k = rep.l_crit; k + 1 <= g; ++k) {
    const bool lo_done = best_lo != kNone && k + D >= best_lo;
    hi_done = hi_done || (best_hi != kNone && k + D >= best_hi);
    if (lo_done && hi_done) {
      break;
    }
    std::size_t m_lo = 1, m_hi = 1;
    bool trivial = false;
    if (D > 0) {
      MBound row = bounds(D, k + 1, mode);
      m_lo = row.lower;
      m_hi = row.upper;
      trivial = row.trivial_upper;
      all_exact = all_exact && row.exact;
      out.rows.push_back(row);
    }
    if (!lo_done) {
      best_lo = std::min(best_lo, k + D * m_lo);
    }
    if (!hi_done && (best_hi == kNone || k + D * m_hi < best_hi)) {
      best_hi = k + D * m_hi;
      out.argmin_k = k;
    }
    if (trivial) {
      // The trivial bound is G at every longer length as well, so f_hi only grows.
      hi_done = true;
    }
  }
  if (best_lo == kNone) {
    // l_crit >= G: no window length k+1 <= G is available.
    best_lo = rep.l_crit + D;
    best_hi = rep.l_crit + D * g;
    out.argmin_k = rep.l_crit;
    all_exact = D == 0;
    out.warnings.push_back("l_crit >= G; no admissible k for the noisy threshold");
  }
  out.lower = best_lo;
  out.upper = std::max(best_hi, best_lo);
  out.exact = all_exact && out.lower == out.upper;
  out.too_wide = D > 0 && out.upper - out.lower >= D;
  return out;
}

std::vector<std::size_t> ApproxRepeatAnalyzer::best_window_cluster(std::size_t d,
                                                                   std::size_t length) const {
  const std::size_t g = impl_->seq.length();
  if (length == 0 || length > g) {
    throw InvalidArgument("window length outside [1, G]");
  }
  PackedWindows win(impl_->seq.str(), length);
  std::size_t best = 0, best_anchor = 0;
  for (std::size_t i = 0; i < g; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < g; ++j) c += win.distance(i, j) <= d;
    if (c > best) {
      best = c;
      best_anchor = i;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < g; ++j) {
    if (win.distance(best_anchor, j) <= d) out.push_back(j);
  }
  return out;
}

MBound approx_repeat_bounds(const CircularSequence& seq, std::size_t d, std::size_t length,
                            ApproxMode mode, const ApproxConfig& config) {
  return ApproxRepeatAnalyzer(seq, config).bounds(d, length, mode);
}

NoisyThreshold l_crit_noisy(const CircularSequence& seq, std::size_t D, ApproxMode mode,
                            const ApproxConfig& config) {
  return ApproxRepeatAnalyzer(seq, config).noisy_threshold(D, mode);
}

} // namespace spectra
