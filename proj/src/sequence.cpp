#include "spectra/sequence.hpp"

#include <algorithm>
#include <vector>

#include "spectra/errors.hpp"

namespace spectra {

CircularSequence::CircularSequence(std::string symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw InvalidArgument("circular sequence must be non-empty");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!is_base(symbols_[i])) {
      throw InvalidArgument("illegal symbol '" + std::string(1, symbols_[i]) + "' at position " +
                            std::to_string(i));
    }
  }
  period_ = circular_period(symbols_);
}

std::string CircularSequence::window(std::size_t t, std::size_t len) const {
  const std::size_t g = symbols_.size();
  if (len == 0 || len > g) {
    throw InvalidArgument("window length " + std::to_string(len) + " outside [1, " +
                          std::to_string(g) + "]");
  }
  t %= g;
  if (t + len <= g) {
    return symbols_.substr(t, len);
  }
  std::string out = symbols_.substr(t);
  out.append(symbols_, 0, len - (g - t));
  return out;
}

CircularSequence CircularSequence::rotated(std::size_t t) const {
  return CircularSequence(window(t, symbols_.size()));
}

std::size_t CircularSequence::canonical_offset() const noexcept {
  return least_rotation(symbols_);
}

CircularSequence CircularSequence::canonical() const {
  return rotated(canonical_offset());
}

ErasableString::ErasableString(std::string symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!is_base(symbols_[i]) && symbols_[i] != kErased) {
      throw InvalidArgument("illegal read symbol '" + std::string(1, symbols_[i]) +
                            "' at position " + std::to_string(i));
    }
  }
}

std::size_t ErasableString::erasure_count() const noexcept {
  return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), kErased));
}

std::string ErasableString::to_display() const {
  std::string out;
  out.reserve(symbols_.size() * 2);
  for (char c : symbols_) {
    if (c == kErased) {
      out += "·";
    } else {
      out += c;
    }
  }
  return out;
}

std::string window(const CircularSequence& seq, std::size_t t, std::size_t len) {
  return seq.window(t, len);
}

std::size_t hamming(std::string_view x, std::string_view y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("hamming: length mismatch (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d += x[i] != y[i];
  }
  return d;
}

bool erasure_compatible(std::string_view read, std::string_view target) {
  if (read.size() != target.size()) {
    throw InvalidArgument("erasure_compatible: length mismatch");
  }
  for (std::size_t i = 0; i < read.size(); ++i) {
    if (read[i] != kErased && read[i] != target[i]) {
      return false;
    }
  }
  return true;
}

bool erasure_compatible(const ErasableString& read, std::string_view target) {
  return erasure_compatible(std::string_view(read.str()), target);
}

bool rotation_equal(const CircularSequence& a, const CircularSequence& b) {
  if (a.length() != b.length()) {
    return false;
  }
  return a.canonical() == b.canonical();
}

std::size_t least_rotation(std::string_view s) {
  // Booth's algorithm over the doubled string.
  const std::size_t n = s.size();
  if (n == 0) {
    return 0;
  }
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  auto at = [&](std::size_t i) { return s[i % n]; };
  for (std::size_t j = 1; j < 2 * n; ++j) {
    char sj = at(j);
    long i = f[j - k - 1];
    while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
      if (sj < at(k + static_cast<std::size_t>(i) + 1)) {
        k = j - static_cast<std::size_t>(i) - 1;
      }
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
      if (sj < at(k + static_cast<std::size_t>(i) + 1)) {
        k = j;
      }
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

std::size_t circular_period(std::string_view s) {
  const std::size_t n = s.size();
  if (n == 0) {
    return 0;
  }
  // KMP failure function; the smallest string period p divides n exactly
  // when the circular sequence is invariant under rotation by p.
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && s[i] != s[k]) {
      k = pi[k - 1];
    }
    if (s[i] == s[k]) {
      ++k;
    }
    pi[i] = k;
  }
  const std::size_t p = n - pi[n - 1];
  return n % p == 0 ? p : n;
}

} // namespace spectra
