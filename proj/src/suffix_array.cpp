#include "spectra/suffix_array.hpp"

#include <algorithm>
#include <numeric>

namespace spectra {

CircularSuffixArray CircularSuffixArray::build(std::string_view text) {
  const std::size_t n = text.size();
  CircularSuffixArray out;
  if (n == 0) {
    return out;
  }
  // Prefix doubling over cyclic shifts with counting sorts.
  std::vector<std::uint32_t> p(n), c(n), pn(n), cn(n);
  std::vector<std::uint32_t> cnt(std::max<std::size_t>(n, 256), 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++cnt[static_cast<unsigned char>(text[i])];
  }
  for (std::size_t i = 1; i < 256; ++i) {
    cnt[i] += cnt[i - 1];
  }
  for (std::size_t i = n; i-- > 0;) {
    p[--cnt[static_cast<unsigned char>(text[i])]] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t classes = 1;
  c[p[0]] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (text[p[i]] != text[p[i - 1]]) {
      ++classes;
    }
    c[p[i]] = classes - 1;
  }
  for (std::size_t h = 1; h < n && classes < n; h <<= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t v = p[i] + n - (h % n);
      pn[i] = static_cast<std::uint32_t>(v >= n ? v - n : v);
    }
    std::fill(cnt.begin(), cnt.begin() + classes, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++cnt[c[pn[i]]];
    }
    for (std::size_t i = 1; i < classes; ++i) {
      cnt[i] += cnt[i - 1];
    }
    for (std::size_t i = n; i-- > 0;) {
      p[--cnt[c[pn[i]]]] = pn[i];
    }
    cn[p[0]] = 0;
    classes = 1;
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t a = p[i] + h, b = p[i - 1] + h;
      a %= n;
      b %= n;
      if (c[p[i]] != c[p[i - 1]] || c[a] != c[b]) {
        ++classes;
      }
      cn[p[i]] = classes - 1;
    }
    c.swap(cn);
  }

  out.order = std::move(p);
  out.rank.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    out.rank[out.order[i]] = static_cast<std::uint32_t>(i);
  }
  // Kasai over rotations: lcp of rotation i with its predecessor drops by at
  // most one when moving to rotation i+1.
  out.lcp.assign(n, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = out.rank[i];
    if (r == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = out.order[r - 1];
    while (h < n) {
      std::size_t a = i + h, b = j + h;
      if (a >= n) a -= n;
      if (b >= n) b -= n;
      if (text[a] != text[b]) break;
      ++h;
    }
    out.lcp[r] = static_cast<std::uint32_t>(h);
    // identical rotations are ordered arbitrarily, so the carry is only
    // valid after a mismatch
    if (h == n) {
      h = 0;
    } else if (h > 0) {
      --h;
    }
  }
  return out;
}

} // namespace spectra
