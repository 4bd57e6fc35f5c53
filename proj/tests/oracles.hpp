#pragma once

// Independent reference implementations used by the unit tests and the
// acceptance driver. They work on plain letter vectors and never call the
// structures they are compared against.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "fg/word.hpp"

namespace fg {
inline void PrintTo(const Word& w, std::ostream* os) { *os << "'" << to_string(w) << "'"; }
}  // namespace fg

namespace oracle {

using Letters = std::vector<fg::SignedLetter>;

inline Letters free_reduce(const Letters& in) {
  Letters st;
  for (auto s : in) {
    if (!st.empty() && st.back() == -s)
      st.pop_back();
    else
      st.push_back(s);
  }
  return st;
}

inline Letters inverse(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (auto& s : out) s = -s;
  return out;
}

inline Letters repeat(const Letters& w, std::int64_t k) {
  Letters out;
  for (std::int64_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline bool cyclically_reduced(const Letters& w) {
  if (w.empty()) return true;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return w.size() == 1 || w.front() != -w.back();
}

// Smallest root by scanning every divisor of the length.
inline std::pair<Letters, std::int64_t> power_root(const Letters& w) {
  std::size_t n = w.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return {Letters(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d)),
                    static_cast<std::int64_t>(n / d)};
  }
  return {w, 1};
}

inline bool matches_at(const Letters& host, std::int64_t pos, const Letters& pat) {
  if (pos < 0 || pos + static_cast<std::int64_t>(pat.size()) > static_cast<std::int64_t>(host.size()))
    return false;
  return std::equal(pat.begin(), pat.end(), host.begin() + pos);
}

struct Occ {
  std::int64_t start;
  std::int64_t q;  // signed
};

// Every maximal stable occurrence by scanning all positions and exponents.
inline std::vector<Occ> stable_scan(const Letters& W, const Letters& A, std::int64_t min_q) {
  std::vector<Occ> out;
  auto L = static_cast<std::int64_t>(A.size());
  auto n = static_cast<std::int64_t>(W.size());
  for (int sign : {1, -1}) {
    Letters P = sign > 0 ? A : inverse(A);
    for (std::int64_t s = 0; s < n; ++s) {
      for (std::int64_t q = 1; s + (q + 1) * L <= n; ++q) {
        if (!matches_at(W, s - L, repeat(P, q + 2))) continue;
        bool left = matches_at(W, s - 2 * L, repeat(P, q + 3));
        bool right = matches_at(W, s - L, repeat(P, q + 3));
        if (left || right || q < min_q) continue;
        out.push_back({s, sign * q});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Occ& a, const Occ& b) { return a.start < b.start; });
  return out;
}

// Decomposition string in the `[B1][A^q1][B2]` layout, or nullopt when two
// occurrences overlap.
inline std::optional<std::string> decomposition(const Letters& W, const Letters& A,
                                                std::int64_t min_q) {
  auto occ = stable_scan(W, A, min_q);
  std::string out;
  std::int64_t cur = 0;
  auto L = static_cast<std::int64_t>(A.size());
  auto side = [&](std::int64_t from, std::int64_t to) {
    Letters s(W.begin() + from, W.begin() + to);
    return "[" + fg::to_string(fg::reduce(s)) + "]";
  };
  for (const auto& o : occ) {
    if (o.start < cur) return std::nullopt;
    out += side(cur, o.start) + "[A^" + std::to_string(o.q) + "]";
    cur = o.start + (o.q < 0 ? -o.q : o.q) * L;
  }
  out += side(cur, static_cast<std::int64_t>(W.size()));
  return out;
}

// All cyclically reduced non-empty words over {a, b} of length <= n.
inline std::vector<Letters> cyclic_words(fg::SignedLetter a, fg::SignedLetter b, int n) {
  std::vector<Letters> all, out;
  std::vector<Letters> layer = {{}};
  const fg::SignedLetter al[] = {a, -a, b, -b};
  for (int len = 1; len <= n; ++len) {
    std::vector<Letters> next;
    for (const auto& w : layer)
      for (auto s : al) {
        if (!w.empty() && w.back() == -s) continue;
        Letters v = w;
        v.push_back(s);
        next.push_back(v);
      }
    layer = next;
    for (const auto& w : layer)
      if (cyclically_reduced(w)) out.push_back(w);
  }
  return out;
}

struct CommonRootResult {
  std::int64_t pairs = 0;
  std::int64_t premise = 0;  // pairs meeting the prefix condition
  std::vector<std::string> counterexamples;
};

// u^m and v^n (m, n > 1) sharing a prefix of length |u|+|v| must commute,
// which in a free group means a common root.
inline CommonRootResult common_root(int max_len) {
  auto a = fg::signed_letter(fg::intern("a"), 1), b = fg::signed_letter(fg::intern("b"), 1);
  auto words = cyclic_words(a, b, max_len);
  CommonRootResult r;
  for (const auto& u : words)
    for (const auto& v : words) {
      ++r.pairs;
      std::size_t need = u.size() + v.size();
      std::int64_t mu = std::max<std::int64_t>(2, static_cast<std::int64_t>((need + u.size() - 1) / u.size()));
      std::int64_t mv = std::max<std::int64_t>(2, static_cast<std::int64_t>((need + v.size() - 1) / v.size()));
      Letters U = repeat(u, mu), V = repeat(v, mv);
      if (!std::equal(U.begin(), U.begin() + static_cast<std::ptrdiff_t>(need), V.begin())) continue;
      ++r.premise;
      Letters uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      bool commute = free_reduce(uv) == free_reduce(vu);
      bool same_root = power_root(u).first == power_root(v).first;
      if (!commute || !same_root)
        r.counterexamples.push_back(fg::to_string(fg::reduce(u)) + " / " + fg::to_string(fg::reduce(v)));
    }
  return r;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  Letters letters(const std::vector<fg::SignedLetter>& alphabet, std::int64_t n) {
    Letters w;
    while (static_cast<std::int64_t>(w.size()) < n) {
      auto s = alphabet[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(alphabet.size()) - 1))];
      if (uniform(0, 1)) s = -s;
      if (!w.empty() && w.back() == -s) continue;
      w.push_back(s);
    }
    return w;
  }

  // Cyclically reduced primitive word.
  Letters period(const std::vector<fg::SignedLetter>& alphabet, std::int64_t max_len) {
    for (;;) {
      Letters w = letters(alphabet, uniform(1, max_len));
      if (cyclically_reduced(w) && power_root(w).second == 1) return w;
    }
  }

  // Random chunks interleaved with powers of A, reduced and capped at max_len.
  Letters host(const std::vector<fg::SignedLetter>& alphabet, const Letters& A, std::int64_t max_len) {
    Letters w;
    while (static_cast<std::int64_t>(w.size()) < max_len) {
      Letters part;
      if (uniform(0, 2) == 0) {
        part = letters(alphabet, uniform(1, 6));
      } else {
        part = repeat(uniform(0, 3) ? A : inverse(A), uniform(1, 9));
      }
      w.insert(w.end(), part.begin(), part.end());
      w = free_reduce(w);
    }
    w.resize(static_cast<std::size_t>(std::min<std::int64_t>(max_len, static_cast<std::int64_t>(w.size()))));
    return w;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
