#include "spectra/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

#include "spectra/errors.hpp"
#include "spectra/reads.hpp"

namespace spectra::oracle {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw OracleBudgetExceeded("oracle budget exceeded: " + what);
}

std::string min_rotation(const std::string& s) {
  std::string best = s;
  for (std::size_t r = 1; r < s.size(); ++r) {
    std::string rot = s.substr(r) + s.substr(0, r);
    if (rot < best) best = std::move(rot);
  }
  return best;
}

// True when no rotation of s is lexicographically smaller.
bool is_least_rotation(const std::string& s) {
  const std::size_t n = s.size();
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const char a = s[(r + i) % n];
      if (a != s[i]) {
        if (a < s[i]) return false;
        break;
      }
    }
  }
  return true;
}

std::string cyc(const std::string& s, std::size_t t, std::size_t len) {
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out += s[(t + i) % s.size()];
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    v *= base;
  }
  return v;
}

struct Steps {
  std::uint64_t left;
  void tick() {
    if (left == 0) throw OracleBudgetExceeded("oracle budget exceeded: search nodes");
    --left;
  }
};

} // namespace

void OracleBudget::apply(std::string_view spec) {
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view item = spec.substr(pos, end - pos);
    pos = end + 1;
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("oracle budget entry '" + std::string(item) + "' lacks '='");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view text = item.substr(eq + 1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
      throw InvalidArgument("oracle budget value for '" + std::string(key) +
                            "' must be a positive integer");
    }
    if (key == "max_G") max_G = value;
    else if (key == "max_alphabet") max_alphabet = value;
    else if (key == "max_center_space") max_center_space = value;
    else if (key == "max_candidates") max_candidates = value;
    else if (key == "max_edges") max_edges = value;
    else if (key == "max_search_nodes") max_search_nodes = value;
    else throw InvalidArgument("unknown oracle budget key '" + std::string(key) + "'");
  }
}

OracleBudget OracleBudget::from_environment() {
  OracleBudget b;
  if (const char* env = std::getenv("SPECTRA_ORACLE_BUDGET")) {
    b.apply(env);
  }
  return b;
}

std::vector<BrutePair> brute_maximal_repeats(const CircularSequence& seq,
                                             const OracleBudget& budget) {
  const std::string& s = seq.str();
  const std::size_t g = s.size();
  require(g <= budget.max_G, "G=" + std::to_string(g) + " > max_G=" + std::to_string(budget.max_G));
  std::vector<BrutePair> out;
  for (std::size_t t1 = 0; t1 < g; ++t1) {
    for (std::size_t t2 = t1 + 1; t2 < g; ++t2) {
      if (s[(t1 + g - 1) % g] == s[(t2 + g - 1) % g]) continue;
      std::size_t len = 0;
      while (len < g && s[(t1 + len) % g] == s[(t2 + len) % g]) ++len;
      if (len == 0 || len == g) continue;
      // right maximality holds because len stopped at a mismatch
      out.push_back({t1, t2, len});
    }
  }
  return out;
}

std::size_t brute_linter(const CircularSequence& seq, const OracleBudget& budget) {
  const auto pairs = brute_maximal_repeats(seq, budget);
  const long g = static_cast<long>(seq.length());
  std::size_t best = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      const std::size_t len = std::min(pairs[i].length, pairs[j].length);
      if (len <= best) continue;
      const long pa[2] = {long(pairs[i].pos1), long(pairs[i].pos2)};
      const long pb[2] = {long(pairs[j].pos1), long(pairs[j].pos2)};
      bool found = false;
      // every assignment of roles and every lift by multiples of G in a small range
      for (int ra = 0; ra < 2 && !found; ++ra) {
        for (int rb = 0; rb < 2 && !found; ++rb) {
          for (long ja = 0; ja < 3 && !found; ++ja) {
            for (long j1 = 0; j1 < 3 && !found; ++j1) {
              for (long j2 = 0; j2 < 4 && !found; ++j2) {
                const long a1 = pa[ra];
                const long a2 = pa[1 - ra] + ja * g;
                const long b1 = pb[rb] + j1 * g;
                const long b2 = pb[1 - rb] + j2 * g;
                if (a1 < b1 && b1 <= a2 && a2 < b2 && b2 - a1 < g) found = true;
              }
            }
          }
        }
      }
      if (found) best = len;
    }
  }
  return best;
}

std::size_t brute_lcrit(const CircularSequence& seq, const OracleBudget& budget) {
  return brute_linter(seq, budget) + 1;
}

std::size_t exact_center_M(const CircularSequence& seq, std::size_t d, std::size_t length,
                           const OracleBudget& budget) {
  const std::string& s = seq.str();
  const std::size_t g = s.size();
  if (length == 0 || length > g) {
    throw InvalidArgument("window length must lie in [1, G]");
  }
  if (d >= length) return g;
  const std::uint64_t space = checked_pow(4, length, budget.max_center_space);
  require(space <= budget.max_center_space,
          "4^" + std::to_string(length) + " centers > max_center_space");
  std::vector<std::string> windows;
  for (std::size_t t = 0; t < g; ++t) windows.push_back(cyc(s, t, length));
  std::size_t best = 0;
  std::string center(length, 'A');
  for (std::uint64_t code = 0; code < space; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < length; ++i) {
      center[length - 1 - i] = "ACGT"[c % 4];
      c /= 4;
    }
    std::size_t covered = 0;
    for (const auto& w : windows) {
      std::size_t dist = 0;
      for (std::size_t i = 0; i < length && dist <= d; ++i) dist += w[i] != center[i];
      covered += dist <= d;
    }
    best = std::max(best, covered);
  }
  return best;
}

namespace {

bool compatible(const std::string& read, const std::string& cand, std::size_t start) {
  for (std::size_t j = 0; j < read.size(); ++j) {
    if (read[j] != 'N' && read[j] != cand[(start + j) % cand.size()]) return false;
  }
  return true;
}

// Place one read per start position 0..G-1, tracking erasures per column.
bool place(const std::string& cand, const std::vector<std::string>& kinds,
           std::vector<std::size_t>& left, std::vector<std::size_t>& column, std::size_t pos,
           std::size_t D, Steps& steps) {
  const std::size_t g = cand.size();
  if (pos == g) return true;
  steps.tick();
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    if (left[k] == 0 || !compatible(kinds[k], cand, pos)) continue;
    const std::string& r = kinds[k];
    bool ok = true;
    std::size_t j = 0;
    for (; j < r.size(); ++j) {
      if (r[j] == 'N') {
        if (++column[(pos + j) % g] > D) ok = false;
      }
    }
    if (ok) {
      --left[k];
      if (place(cand, kinds, left, column, pos + 1, D, steps)) return true;
      ++left[k];
    }
    for (j = 0; j < r.size(); ++j) {
      if (r[j] == 'N') --column[(pos + j) % g];
    }
  }
  return false;
}

bool consistent_with_kinds(const std::string& cand, const std::vector<std::string>& kinds,
                           const std::vector<std::size_t>& counts, std::size_t D, Steps& steps) {
  for (const auto& r : kinds) {
    bool any = false;
    for (std::size_t t = 0; t < cand.size() && !any; ++t) any = compatible(r, cand, t);
    if (!any) return false;
  }
  std::vector<std::size_t> left = counts;
  std::vector<std::size_t> column(cand.size(), 0);
  return place(cand, kinds, left, column, 0, D, steps);
}

void group(const std::vector<std::string>& reads, std::vector<std::string>& kinds,
           std::vector<std::size_t>& counts) {
  std::map<std::string, std::size_t> m;
  for (const auto& r : reads) ++m[r];
  for (const auto& [r, c] : m) {
    kinds.push_back(r);
    counts.push_back(c);
  }
}

} // namespace

bool is_consistent(std::string_view candidate, const std::vector<std::string>& reads,
                   std::size_t D, const OracleBudget& budget) {
  const std::string cand(candidate);
  require(cand.size() <= budget.max_G, "G > max_G");
  if (reads.size() != cand.size()) return false;
  for (const auto& r : reads) {
    if (r.size() > cand.size()) return false;
    std::size_t erased = 0;
    for (char c : r) erased += c == 'N';
    if (erased > D) return false;
  }
  std::vector<std::string> kinds;
  std::vector<std::size_t> counts;
  group(reads, kinds, counts);
  Steps steps{budget.max_search_nodes};
  return consistent_with_kinds(cand, kinds, counts, D, steps);
}

std::vector<std::string> enumerate_consistent(const ReadSet& reads, std::size_t D,
                                              std::string_view alphabet, std::size_t G,
                                              const OracleBudget& budget) {
  require(G <= budget.max_G, "G > max_G");
  require(alphabet.size() >= 1 && alphabet.size() <= budget.max_alphabet, "alphabet size");
  const std::uint64_t space = checked_pow(alphabet.size(), G, budget.max_candidates);
  require(space <= budget.max_candidates,
          std::to_string(alphabet.size()) + "^" + std::to_string(G) + " candidates > max_candidates");
  if (reads.G() != G) return {};
  const std::vector<std::string> plain = reads.strings();
  for (const auto& r : plain) {
    std::size_t erased = 0;
    for (char c : r) erased += c == 'N';
    if (erased > D) return {};
  }
  std::vector<std::string> kinds;
  std::vector<std::size_t> counts;
  group(plain, kinds, counts);
  Steps steps{budget.max_search_nodes};
  std::vector<std::string> out;
  std::string cand(G, alphabet[0]);
  const std::size_t L = kinds.empty() ? 0 : kinds[0].size();
  // Depth-first over candidates. A prefix dies once a window lying inside it
  // matches no read, since every start position needs one.
  auto fill = [&](auto&& self, std::size_t p) -> void {
    if (p >= L && L > 0) {
      bool any = false;
      for (std::size_t k = 0; k < kinds.size() && !any; ++k) {
        any = compatible(kinds[k], cand, p - L);
      }
      if (!any) return;
    }
    if (p == G) {
      if (is_least_rotation(cand) && consistent_with_kinds(cand, kinds, counts, D, steps)) {
        out.push_back(cand);
      }
      return;
    }
    for (char c : alphabet) {
      cand[p] = c;
      self(self, p + 1);
    }
  };
  fill(fill, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> enumerate_eulerian(const std::vector<std::string>& spectrum,
                                            std::size_t max_classes, const OracleBudget& budget) {
  require(spectrum.size() <= budget.max_edges, "edges > max_edges");
  if (spectrum.empty()) return {};
  const std::size_t l = spectrum[0].size();
  if (l == 0) throw InvalidArgument("spectrum strings must be nonempty");
  for (const auto& e : spectrum) {
    if (e.size() != l) throw InvalidArgument("spectrum strings differ in length");
  }
  // edges grouped by label; out-lists keyed by the (l-1)-prefix
  std::map<std::string, std::size_t> label_count;
  for (const auto& e : spectrum) ++label_count[e];
  std::vector<std::string> labels;
  std::vector<std::size_t> remaining;
  for (const auto& [e, c] : label_count) {
    labels.push_back(e);
    remaining.push_back(c);
  }
  std::map<std::string, std::vector<std::size_t>> out_edges;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out_edges[labels[i].substr(0, l - 1)].push_back(i);
  }
  const std::size_t total = spectrum.size();
  std::set<std::string> classes;
  Steps steps{budget.max_search_nodes};
  std::string spelled;
  const std::size_t first = 0;
  const std::string start_node = labels[first].substr(0, l - 1);

  auto done = [&] { return max_classes != 0 && classes.size() >= max_classes; };
  auto dfs = [&](auto&& self, const std::string& node, std::size_t used) -> void {
    if (done()) return;
    steps.tick();
    if (used == total) {
      if (node == start_node) classes.insert(min_rotation(spelled));
      return;
    }
    auto it = out_edges.find(node);
    if (it == out_edges.end()) return;
    for (std::size_t e : it->second) {
      if (remaining[e] == 0) continue;
      --remaining[e];
      spelled.push_back(labels[e][0]);
      self(self, labels[e].substr(1), used + 1);
      spelled.pop_back();
      ++remaining[e];
      if (done()) return;
    }
  };
  --remaining[first];
  spelled.push_back(labels[first][0]);
  dfs(dfs, labels[first].substr(1), 1);
  return {classes.begin(), classes.end()};
}

bool hall_matching_check(const CircularSequence& truth, const CircularSequence& candidate,
                         std::size_t k, const OracleBudget& budget) {
  const std::size_t g = truth.length();
  require(g <= budget.max_G && candidate.length() <= budget.max_G, "G > max_G");
  if (candidate.length() != g) return false;
  const std::size_t len = k + 1;
  if (len == 0 || len > g) throw InvalidArgument("k + 1 must lie in [1, G]");
  std::vector<std::vector<std::size_t>> adj(g);
  for (std::size_t u = 0; u < g; ++u) {
    const std::string wu = cyc(truth.str(), u, len);
    for (std::size_t v = 0; v < g; ++v) {
      if (wu == cyc(candidate.str(), v, len)) adj[u].push_back(v);
    }
  }
  std::vector<long> match_v(g, -1);
  Steps steps{budget.max_search_nodes};
  for (std::size_t u = 0; u < g; ++u) {
    std::vector<char> seen(g, 0);
    auto augment = [&](auto&& self, std::size_t x) -> bool {
      steps.tick();
      for (std::size_t v : adj[x]) {
        if (seen[v]) continue;
        seen[v] = 1;
        if (match_v[v] < 0 || self(self, static_cast<std::size_t>(match_v[v]))) {
          match_v[v] = static_cast<long>(x);
          return true;
        }
      }
      return false;
    };
    if (!augment(augment, u)) return false;
  }
  return true;
}

} // namespace spectra::oracle
