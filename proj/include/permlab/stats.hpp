#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "permlab/core.hpp"
#include "permlab/limit_laws.hpp"

namespace permlab {

namespace detail {

inline int64_t lis_of_word(const std::vector<Label>& w) {
  std::vector<Label> tails;
  tails.reserve(w.size());
  for (const Label v : w) {
    const auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return static_cast<int64_t>(tails.size());
}

inline int64_t lds_of_word(const std::vector<Label>& w) {
  std::vector<Label> rev(w.rbegin(), w.rend());
  return lis_of_word(rev);
}

// Fenwick tree over values 1..n with prefix sums; wrapping additions are the
// caller's responsibility to preclude.
class Fenwick {
 public:
  explicit Fenwick(size_t n) : tree_(n + 1, 0) {}

  void add(size_t value, uint64_t amount) {
    for (size_t i = value; i < tree_.size(); i += i & (~i + 1)) tree_[i] += amount;
  }

  uint64_t prefix(size_t value) const {
    uint64_t s = 0;
    for (size_t i = value; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  void reset() { std::fill(tree_.begin(), tree_.end(), 0); }

 private:
  std::vector<uint64_t> tree_;
};

inline double log2_binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return -1.0;
  return (std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
          std::lgamma(static_cast<double>(n - k) + 1.0)) /
         std::numbers::ln2;
}

}  // namespace detail

inline int64_t lis(const Permutation& sigma) { return detail::lis_of_word(sigma.word()); }

inline int64_t lds(const Permutation& sigma) { return detail::lds_of_word(sigma.word()); }

// Longest subsequence that increases after some rotation of the position
// axis: the maximum over the n rotated readings of the word.
inline int64_t lics(const Permutation& sigma) {
  const auto& w = sigma.word();
  const size_t n = w.size();
  std::vector<Label> rot(n);
  int64_t best = 0;
  for (size_t r = 0; r < n; ++r) {
    for (size_t k = 0; k < n; ++k) rot[k] = w[(k + r) % n];
    best = std::max(best, detail::lis_of_word(rot));
  }
  return best;
}

inline int64_t ldcs(const Permutation& sigma) {
  const auto& w = sigma.word();
  const size_t n = w.size();
  std::vector<Label> rot(n);
  int64_t best = 0;
  for (size_t r = 0; r < n; ++r) {
    for (size_t k = 0; k < n; ++k) rot[k] = w[(k + r) % n];
    best = std::max(best, detail::lds_of_word(rot));
  }
  return best;
}

// Shape of the insertion tableau under row insertion. The first part is
// lis(sigma), the first column is lds(sigma), and prefix sums obey the
// maximal-union characterization of increasing subsequences.
inline Partition rsk_shape(const Permutation& sigma) {
  std::vector<std::vector<Label>> rows;
  for (const Label x : sigma.word()) {
    Label carry = x;
    bool placed = false;
    for (auto& row : rows) {
      const auto it = std::upper_bound(row.begin(), row.end(), carry);
      if (it == row.end()) {
        row.push_back(carry);
        placed = true;
        break;
      }
      std::swap(*it, carry);
    }
    if (!placed) rows.push_back({carry});
  }
  std::vector<Label> parts;
  parts.reserve(rows.size());
  for (const auto& row : rows) parts.push_back(static_cast<Label>(row.size()));
  return Partition(std::move(parts));
}

// Sup distance between the rescaled diagram profile and the limit profile:
// sup_s | L(2 sqrt(n) s) / (2 sqrt(n)) - omega(s) |, where L is the rotated
// height function (integer breakpoints, L(u) = |u| + 2 * boxes on diagonal u).
// The sup is scanned on all breakpoints plus a 1e-3 grid, so the reported
// value is exact up to that grid (the profile difference is 2-Lipschitz).
inline double height_sup_distance(const Partition& shape) {
  const int64_t n = shape.n();
  if (n < 1) throw std::invalid_argument("height_sup_distance: empty shape");
  const auto& parts = shape.parts();
  const int64_t ell = shape.length();
  const int64_t lam1 = parts[0];
  // Boxes per diagonal via a difference array over u in [1-ell, lam1-1].
  const int64_t offset = ell - 1;
  std::vector<int64_t> diff(static_cast<size_t>(lam1 + ell + 1), 0);
  for (int64_t i = 1; i <= ell; ++i) {
    const int64_t lo = 1 - i;
    const int64_t hi = parts[static_cast<size_t>(i - 1)] - i;
    diff[static_cast<size_t>(lo + offset)] += 1;
    diff[static_cast<size_t>(hi + offset + 1)] -= 1;
  }
  std::vector<int64_t> depth(diff.size(), 0);
  int64_t run = 0;
  for (size_t k = 0; k < diff.size(); ++k) {
    run += diff[k];
    depth[k] = run;
  }
  const auto depth_at = [&](int64_t u) -> int64_t {
    const int64_t idx = u + offset;
    if (idx < 0 || idx >= static_cast<int64_t>(depth.size())) return 0;
    return depth[static_cast<size_t>(idx)];
  };
  const auto l_int = [&](int64_t u) -> double {
    return static_cast<double>(std::abs(u) + 2 * depth_at(u));
  };
  const auto l_real = [&](double u) -> double {
    const double fl = std::floor(u);
    const int64_t f = static_cast<int64_t>(fl);
    const double frac = u - fl;
    return (1.0 - frac) * l_int(f) + frac * l_int(f + 1);
  };
  const double scale = 2.0 * std::sqrt(static_cast<double>(n));
  double sup = 0.0;
  const auto consider = [&](double s) {
    sup = std::max(sup, std::abs(l_real(s * scale) / scale - omega(s)));
  };
  for (int64_t u = -ell - 1; u <= lam1 + 1; ++u) consider(static_cast<double>(u) / scale);
  for (int64_t k = -1001; k <= 1001; ++k) consider(static_cast<double>(k) * 1e-3);
  consider(-1.0);
  consider(1.0);
  return sup;
}

// Longest alternating subsequence (first comparison a descent), via the local
// extrema decomposition: 1 + [w1 > w2] + sum of interior strict extrema.
inline int64_t las(const Permutation& sigma) {
  const auto& w = sigma.word();
  const size_t n = w.size();
  if (n == 1) return 1;
  int64_t total = 1 + (w[0] > w[1] ? 1 : 0);
  for (size_t k = 1; k + 1 < n; ++k) {
    if (w[k - 1] > w[k] && w[k] < w[k + 1]) ++total;
    if (w[k - 1] < w[k] && w[k] > w[k + 1]) ++total;
  }
  return total;
}

inline std::vector<Label> descent_set(const Permutation& sigma) {
  std::vector<Label> out;
  for (Label i = 1; i < sigma.size(); ++i) {
    if (sigma(i) > sigma(i + 1)) out.push_back(i);
  }
  return out;
}

inline int64_t descent_count(const Permutation& sigma) {
  int64_t c = 0;
  for (Label i = 1; i < sigma.size(); ++i) {
    if (sigma(i) > sigma(i + 1)) ++c;
  }
  return c;
}

// Descents of depth j: positions with sigma(i+1) + j <= sigma(i). j = 1 gives
// the ordinary descents.
inline int64_t j_descent_count(const Permutation& sigma, Label j) {
  if (j < 1) throw std::invalid_argument("j_descent_count: j must be at least 1");
  int64_t c = 0;
  for (Label i = 1; i < sigma.size(); ++i) {
    if (sigma(i + 1) + j <= sigma(i)) ++c;
  }
  return c;
}

inline bool descents_contain(const Permutation& sigma, const std::vector<int>& window) {
  for (const int a : window) {
    if (a < 1 || a >= sigma.size()) throw std::invalid_argument("descents_contain: position outside 1..n-1");
    if (!(sigma(static_cast<Label>(a)) > sigma(static_cast<Label>(a) + 1))) return false;
  }
  return true;
}

// Count of i with sigma(i) >= i + j (weak inequality).
inline int64_t exceedance_count(const Permutation& sigma, Label j) {
  int64_t c = 0;
  for (Label i = 1; i <= sigma.size(); ++i) {
    if (sigma(i) >= i + j) ++c;
  }
  return c;
}

inline int64_t peak_count(const Permutation& sigma) {
  const auto& w = sigma.word();
  int64_t c = 0;
  for (size_t k = 1; k + 1 < w.size(); ++k) {
    if (w[k - 1] < w[k] && w[k] > w[k + 1]) ++c;
  }
  return c;
}

// Fixed points of sigma^k: elements whose cycle length divides k.
inline int64_t trace_power(const Permutation& sigma, int64_t k) {
  if (k < 1) throw std::invalid_argument("trace_power: k must be at least 1");
  int64_t total = 0;
  for (const auto& cyc : cycle_decomposition(sigma).cycles) {
    if (k % static_cast<int64_t>(cyc.size()) == 0) total += static_cast<int64_t>(cyc.size());
  }
  return total;
}

// Number of strictly decreasing subsequences of length j ("clicks"); j = 2 is
// the inversion count. Exact in 64 bits, guarded against overflow.
inline uint64_t clicks(const Permutation& sigma, int j) {
  if (j < 1) throw std::invalid_argument("clicks: j must be at least 1");
  const auto& w = sigma.word();
  const int64_t n = static_cast<int64_t>(w.size());
  if (j > n) return 0;
  if (j == 1) return static_cast<uint64_t>(n);
  for (int t = 2; t <= j; ++t) {
    if (detail::log2_binomial(n, t) > 62.5) {
      throw std::overflow_error("clicks: count may exceed 64 bits for this n and j");
    }
  }
  std::vector<uint64_t> dp(w.size(), 1);
  detail::Fenwick bit(w.size());
  for (int t = 2; t <= j; ++t) {
    bit.reset();
    std::vector<uint64_t> next(w.size(), 0);
    uint64_t total = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      next[i] = total - bit.prefix(static_cast<size_t>(w[i]));
      bit.add(static_cast<size_t>(w[i]), dp[i]);
      total += dp[i];
    }
    dp.swap(next);
  }
  uint64_t out = 0;
  for (const uint64_t v : dp) out += v;
  return out;
}

// Degree of vertex k in the permutation graph: pairs (i, k) in inversion.
inline int64_t degree(const Permutation& sigma, Label k) {
  if (k < 1 || k > sigma.size()) throw std::invalid_argument("degree: vertex outside 1..n");
  int64_t c = 0;
  for (Label i = 1; i <= sigma.size(); ++i) {
    if (i == k) continue;
    const int64_t a = static_cast<int64_t>(i) - k;
    const int64_t b = static_cast<int64_t>(sigma(i)) - sigma(k);
    if (a * b < 0) ++c;
  }
  return c;
}

// Pattern tau with required adjacencies: t in adjacent forces the t-th and
// (t+1)-st chosen positions to be consecutive in sigma.
struct VincularPattern {
  Permutation tau;
  std::vector<Label> adjacent;
};

inline uint64_t vincular_count(const Permutation& sigma, const VincularPattern& pattern) {
  const Label p = pattern.tau.size();
  const Label n = sigma.size();
  for (const Label t : pattern.adjacent) {
    if (t < 1 || t >= p) throw std::invalid_argument("vincular_count: adjacency index outside 1..p-1");
  }
  if (p > n) return 0;
  std::vector<char> adj(static_cast<size_t>(p), 0);
  for (const Label t : pattern.adjacent) adj[static_cast<size_t>(t - 1)] = 1;
  const auto& w = sigma.word();
  const auto& tau = pattern.tau.word();
  std::vector<Label> positions;
  positions.reserve(static_cast<size_t>(p));
  uint64_t count = 0;
  const std::function<void(Label)> rec = [&](Label start) {
    const Label t = static_cast<Label>(positions.size());
    if (t == p) {
      ++count;
      return;
    }
    const Label last = t == 0 ? 0 : positions.back();
    const Label lo = t == 0 ? 1 : (adj[static_cast<size_t>(t - 1)] ? last + 1 : start);
    const Label hi = t == 0 ? n : (adj[static_cast<size_t>(t - 1)] ? std::min(n, last + 1) : n);
    for (Label q = lo; q <= hi; ++q) {
      if (n - q < p - t - 1) break;
      bool ok = true;
      for (Label u = 0; u < t; ++u) {
        const bool want = tau[static_cast<size_t>(u)] < tau[static_cast<size_t>(t)];
        const bool got = w[static_cast<size_t>(positions[static_cast<size_t>(u)] - 1)] < w[static_cast<size_t>(q - 1)];
        if (want != got) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      positions.push_back(q);
      rec(q + 1);
      positions.pop_back();
    }
  };
  rec(1);
  return count;
}

// Longest increasing monochromatic subsequence in the colored length scale:
// k same-colored increasing entries of color p count as length m(k-1) + p.
inline int64_t colored_lis(const ColoredPermutation& cp) {
  const Label m = cp.num_colors;
  if (m < 1) throw std::invalid_argument("colored_lis: num_colors must be positive");
  if (cp.colors.size() != cp.sigma.word().size()) {
    throw std::invalid_argument("colored_lis: color map size mismatch");
  }
  std::vector<std::vector<Label>> by_color(static_cast<size_t>(m));
  const auto& w = cp.sigma.word();
  for (size_t i = 0; i < w.size(); ++i) {
    const Label c = cp.colors[i];
    if (c < 1 || c > m) throw std::invalid_argument("colored_lis: color outside 1..m");
    by_color[static_cast<size_t>(c - 1)].push_back(w[i]);
  }
  int64_t best = 0;
  for (Label p = 1; p <= m; ++p) {
    const auto& sub = by_color[static_cast<size_t>(p - 1)];
    if (sub.empty()) continue;
    const int64_t k = detail::lis_of_word(sub);
    best = std::max(best, static_cast<int64_t>(m) * (k - 1) + p);
  }
  return best;
}

}  // namespace permlab
