#include "spectra/debruijn.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

class MoveSearch {
public:
  MoveSearch(std::string s, std::vector<std::size_t> node, std::size_t n_nodes,
             std::uint64_t max_moves)
      : s_(std::move(s)), node_(std::move(node)), g_(s_.size()), max_moves_(max_moves),
        occ_(n_nodes) {
    for (std::size_t i = 0; i < g_; ++i) occ_[node_[i]].push_back(i);
    canon_ = canonical(s_);
  }

  std::optional<AmbiguityReport> run() {
    for (const auto& o : occ_) {
      if (o.size() < 3) continue;
      for (std::size_t a = 0; a < o.size(); ++a)
        for (std::size_t b = a + 1; b < o.size(); ++b)
          for (std::size_t c = b + 1; c < o.size(); ++c) {
            // x A x B x C  ->  x B x A x C
            std::string t = cut(o[b], o[c]) + cut(o[a], o[b]) + cut(o[c], o[a] + g_);
            if (auto r = differs(std::move(t), "rotation")) return r;
          }
    }
    std::vector<std::size_t> repeated;
    for (std::size_t i = 0; i < g_; ++i) {
      if (occ_[node_[i]].size() >= 2) repeated.push_back(i);
    }
    for (std::size_t ii = 0; ii < repeated.size(); ++ii) {
      const std::size_t i = repeated[ii];
      for (std::size_t k : occ_[node_[i]]) {
        if (k <= i) continue;
        for (std::size_t jj = ii + 1; jj < repeated.size() && repeated[jj] < k; ++jj) {
          const std::size_t j = repeated[jj];
          if (node_[j] == node_[i]) continue;
          for (std::size_t l0 : occ_[node_[j]]) {
            if (l0 > j && l0 < k) continue;
            if (l0 == j) continue;
            const std::size_t l = l0 > k ? l0 : l0 + g_;
            if (l >= i + g_) continue;
            // x A y B x C y D  ->  x C y B x A y D
            std::string t = cut(k, l) + cut(j, k) + cut(i, j) + cut(l, i + g_);
            if (auto r = differs(std::move(t), "transposition")) return r;
          }
        }
      }
    }
    return std::nullopt;
  }

private:
  static std::string canonical(const std::string& s) {
    const std::size_t r = least_rotation(s);
    return s.substr(r) + s.substr(0, r);
  }

  std::string cut(std::size_t from, std::size_t to) const {
    std::string out;
    out.reserve(to - from);
    for (std::size_t i = from; i < to; ++i) out += s_[i % g_];
    return out;
  }

  std::optional<AmbiguityReport> differs(std::string t, const char* move) {
    if (++moves_ > max_moves_) {
      throw InfeasibleError("uniqueness check exceeded " + std::to_string(max_moves_) +
                            " alternative cycles");
    }
    std::string c = canonical(t);
    if (c == canon_) return std::nullopt;
    AmbiguityReport r;
    r.reconstructions.emplace_back(canon_);
    r.reconstructions.emplace_back(std::move(c));
    std::sort(r.reconstructions.begin(), r.reconstructions.end());
    r.move = move;
    return r;
  }

  std::string s_;
  std::vector<std::size_t> node_;
  std::size_t g_;
  std::uint64_t max_moves_;
  std::uint64_t moves_ = 0;
  std::vector<std::vector<std::size_t>> occ_;
  std::string canon_;
};

} // namespace

NoiselessAssembly assemble_noiseless(const std::vector<std::string>& spectrum,
                                     const DeBruijnOptions& options) {
  if (spectrum.empty()) throw InvalidArgument("spectrum is empty");
  const std::size_t l = spectrum[0].size();
  if (l == 0) throw InvalidArgument("spectrum strings must be nonempty");
  for (const auto& e : spectrum) {
    if (e.size() != l) throw InvalidArgument("spectrum strings differ in length");
    for (char c : e) {
      if (!is_base(c)) throw InvalidArgument("spectrum contains a symbol outside ACGT");
    }
  }
  std::vector<std::string> edges = spectrum;
  std::sort(edges.begin(), edges.end());
  const std::size_t m = edges.size();

  std::map<std::string, std::size_t, std::less<>> ids;
  auto id_of = [&](std::string_view k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    const std::size_t id = ids.size();
    ids.emplace(std::string(k), id);
    return id;
  };
  std::vector<std::size_t> from(m), to(m);
  for (std::size_t e = 0; e < m; ++e) {
    from[e] = id_of(std::string_view(edges[e]).substr(0, l - 1));
    to[e] = id_of(std::string_view(edges[e]).substr(1));
  }
  const std::size_t n = ids.size();
  std::vector<long> balance(n, 0);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < m; ++e) {
    ++balance[from[e]];
    --balance[to[e]];
    parent[find_root(parent, from[e])] = find_root(parent, to[e]);
    out[from[e]].push_back(e);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (balance[v] != 0) {
      throw InvalidArgument("spectrum is not balanced: in- and out-degree differ");
    }
    if (find_root(parent, v) != find_root(parent, 0)) {
      throw InvalidArgument("spectrum de Bruijn graph is not connected");
    }
  }

  // Hierholzer, taking edges in sorted label order.
  std::vector<std::size_t> next(n, 0), circuit, stack_nodes{from[0]}, stack_edges;
  circuit.reserve(m);
  while (!stack_nodes.empty()) {
    const std::size_t v = stack_nodes.back();
    if (next[v] < out[v].size()) {
      const std::size_t e = out[v][next[v]++];
      stack_nodes.push_back(to[e]);
      stack_edges.push_back(e);
    } else {
      stack_nodes.pop_back();
      if (!stack_edges.empty()) {
        circuit.push_back(stack_edges.back());
        stack_edges.pop_back();
      }
    }
  }
  std::reverse(circuit.begin(), circuit.end());

  std::string spelled;
  std::vector<std::size_t> node;
  spelled.reserve(m);
  node.reserve(m);
  for (std::size_t e : circuit) {
    spelled += edges[e][0];
    node.push_back(from[e]);
  }

  NoiselessAssembly result;
  MoveSearch search(spelled, std::move(node), n, options.max_moves);
  if (auto amb = search.run()) {
    result.ambiguity = std::move(amb);
  } else {
    result.sequence = CircularSequence(spelled).canonical();
  }
  return result;
}

} // namespace spectra
