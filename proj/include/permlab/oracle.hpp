#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permlab/core.hpp"
#include "permlab/rational.hpp"
#include "permlab/samplers.hpp"
#include "permlab/stats.hpp"

namespace permlab {

// Hard caps for exhaustive computation; exceeding them is an error, never a
// silent truncation.
inline constexpr Label kMaxEnumerationN = 8;   // 8! = 40320 permutations
inline constexpr Label kMaxWalkMatrixN = 6;    // 720 x 720 rational matrix
inline constexpr Label kMaxFinalSetN = 6;      // reachable-set enumeration

inline int64_t factorial(Label n) {
  int64_t f = 1;
  for (Label i = 2; i <= n; ++i) f *= i;
  return f;
}

// Complete lexicographic enumeration of the symmetric group.
inline std::vector<Permutation> enumerate_sn(Label n) {
  if (n < 1) throw std::invalid_argument("enumerate_sn: n must be positive");
  if (n > kMaxEnumerationN) throw std::invalid_argument("enumerate_sn: n exceeds the enumeration cap of 8");
  std::vector<Label> w(static_cast<size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  std::vector<Permutation> out;
  out.reserve(static_cast<size_t>(factorial(n)));
  do {
    out.push_back(Permutation::from_one_line(w));
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// Zero-based lexicographic rank via the factorial number system.
inline int64_t perm_rank(const Permutation& sigma) {
  const auto& w = sigma.word();
  const size_t n = w.size();
  int64_t rank = 0;
  for (size_t i = 0; i < n; ++i) {
    int64_t smaller_later = 0;
    for (size_t k = i + 1; k < n; ++k) {
      if (w[k] < w[i]) ++smaller_later;
    }
    rank = rank * static_cast<int64_t>(n - i) + smaller_later;
  }
  return rank;
}

inline Permutation perm_unrank(Label n, int64_t rank) {
  if (n < 1 || n > kMaxEnumerationN) throw std::invalid_argument("perm_unrank: n outside 1..8");
  if (rank < 0 || rank >= factorial(n)) throw std::invalid_argument("perm_unrank: rank out of range");
  std::vector<Label> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<Label> word;
  word.reserve(static_cast<size_t>(n));
  int64_t f = factorial(n);
  for (Label i = n; i >= 1; --i) {
    f /= i;
    const auto idx = static_cast<size_t>(rank / f);
    rank %= f;
    word.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation::from_one_line(std::move(word));
}

// Finite exact law over permutations: aligned support and rational weights,
// nonnegative, summing exactly to 1.
struct ExactLaw {
  std::vector<Permutation> support;
  std::vector<Rational> weights;

  static ExactLaw make(std::vector<Permutation> support, std::vector<Rational> weights) {
    if (support.empty() || support.size() != weights.size()) {
      throw std::invalid_argument("ExactLaw: support and weights must be nonempty and aligned");
    }
    Rational total(0);
    for (const auto& w : weights) {
      if (w < Rational(0)) throw std::invalid_argument("ExactLaw: negative weight");
      total = total + w;
    }
    if (!(total == Rational(1))) throw std::invalid_argument("ExactLaw: weights must sum exactly to 1");
    ExactLaw law;
    law.support = std::move(support);
    law.weights = std::move(weights);
    return law;
  }

  static ExactLaw uniform(Label n) {
    auto perms = enumerate_sn(n);
    const Rational w(1, factorial(n));
    std::vector<Rational> weights(perms.size(), w);
    return make(std::move(perms), std::move(weights));
  }

  static ExactLaw ewens(Label n, const Rational& theta) {
    auto perms = enumerate_sn(n);
    std::vector<Rational> weights;
    weights.reserve(perms.size());
    for (const auto& p : perms) weights.push_back(ewens_mass(p, theta));
    return make(std::move(perms), std::move(weights));
  }

  static ExactLaw class_uniform(Label n, const Partition& lambda) {
    if (lambda.n() != n) throw std::invalid_argument("ExactLaw: partition does not match n");
    std::vector<Permutation> support;
    for (auto& p : enumerate_sn(n)) {
      if (cycle_type(p).parts() == lambda.parts()) support.push_back(std::move(p));
    }
    const Rational w(1, static_cast<int64_t>(support.size()));
    std::vector<Rational> weights(support.size(), w);
    return make(std::move(support), std::move(weights));
  }

  Rational mass_of(const Permutation& sigma) const {
    for (size_t i = 0; i < support.size(); ++i) {
      if (support[i] == sigma) return weights[i];
    }
    return Rational(0);
  }
};

// Exact distribution of an integer statistic under the law.
template <typename F>
std::map<int64_t, Rational> exact_pushforward(const ExactLaw& law, F&& statistic) {
  std::map<int64_t, Rational> out;
  for (size_t i = 0; i < law.support.size(); ++i) {
    const int64_t v = static_cast<int64_t>(statistic(law.support[i]));
    const auto it = out.find(v);
    if (it == out.end()) {
      out.emplace(v, law.weights[i]);
    } else {
      it->second = it->second + law.weights[i];
    }
  }
  return out;
}

template <typename F>
Rational exact_mean(const ExactLaw& law, F&& statistic) {
  Rational sum(0);
  for (size_t i = 0; i < law.support.size(); ++i) {
    sum = sum + law.weights[i] * Rational(static_cast<int64_t>(statistic(law.support[i])));
  }
  return sum;
}

// Dense rational matrix indexed by lexicographic permutation rank.
struct RationalMatrix {
  int64_t dim = 0;
  std::vector<Rational> entries;

  explicit RationalMatrix(int64_t d) : dim(d), entries(static_cast<size_t>(d * d), Rational(0)) {}

  Rational& at(int64_t r, int64_t c) { return entries[static_cast<size_t>(r * dim + c)]; }
  const Rational& at(int64_t r, int64_t c) const { return entries[static_cast<size_t>(r * dim + c)]; }
};

// One-step transition matrix of the merge walk on S_n: row r holds the law
// of one step from the rank-r permutation (absorbing on single cycles).
inline RationalMatrix exact_walk_matrix(Label n) {
  if (n < 1 || n > kMaxWalkMatrixN) throw std::invalid_argument("exact_walk_matrix: n outside 1..6");
  const auto perms = enumerate_sn(n);
  RationalMatrix m(static_cast<int64_t>(perms.size()));
  for (int64_t r = 0; r < m.dim; ++r) {
    const auto& sigma = perms[static_cast<size_t>(r)];
    const auto pairs = admissible_merge_pairs(sigma);
    if (pairs.empty()) {
      m.at(r, r) = Rational(1);
      continue;
    }
    const Rational share(1, static_cast<int64_t>(pairs.size()));
    for (const auto& [i, j] : pairs) {
      const int64_t c = perm_rank(compose(sigma, transposition(n, i, j)));
      m.at(r, c) = m.at(r, c) + share;
    }
  }
  return m;
}

inline RationalMatrix matrix_multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix_multiply: dimension mismatch");
  RationalMatrix out(a.dim);
  for (int64_t r = 0; r < a.dim; ++r) {
    for (int64_t k = 0; k < a.dim; ++k) {
      const Rational& v = a.at(r, k);
      if (v.num() == 0) continue;
      for (int64_t c = 0; c < a.dim; ++c) {
        const Rational& w = b.at(k, c);
        if (w.num() == 0) continue;
        out.at(r, c) = out.at(r, c) + v * w;
      }
    }
  }
  return out;
}

inline RationalMatrix matrix_power(const RationalMatrix& m, int64_t k) {
  if (k < 0) throw std::invalid_argument("matrix_power: negative exponent");
  RationalMatrix result(m.dim);
  for (int64_t r = 0; r < m.dim; ++r) result.at(r, r) = Rational(1);
  RationalMatrix base = m;
  while (k > 0) {
    if (k & 1) result = matrix_multiply(result, base);
    k >>= 1;
    if (k > 0) base = matrix_multiply(base, base);
  }
  return result;
}

// Dense row vector of the law over ranks; length n!.
inline std::vector<Rational> law_vector(const ExactLaw& law, Label n) {
  std::vector<Rational> v(static_cast<size_t>(factorial(n)), Rational(0));
  for (size_t i = 0; i < law.support.size(); ++i) {
    v[static_cast<size_t>(perm_rank(law.support[i]))] = law.weights[i];
  }
  return v;
}

// Row vector times matrix: one exact step of the distribution.
inline std::vector<Rational> apply_to_distribution(const std::vector<Rational>& v, const RationalMatrix& m) {
  if (static_cast<int64_t>(v.size()) != m.dim) throw std::invalid_argument("apply_to_distribution: size mismatch");
  std::vector<Rational> out(v.size(), Rational(0));
  for (int64_t r = 0; r < m.dim; ++r) {
    if (v[static_cast<size_t>(r)].num() == 0) continue;
    for (int64_t c = 0; c < m.dim; ++c) {
      const Rational& e = m.at(r, c);
      if (e.num() == 0) continue;
      out[static_cast<size_t>(c)] = out[static_cast<size_t>(c)] + v[static_cast<size_t>(r)] * e;
    }
  }
  return out;
}

// All single-cycle permutations reachable from sigma by merge steps, by
// layered breadth-first search (each layer drops the cycle count by one).
inline std::vector<Permutation> final_set(const Permutation& sigma) {
  if (sigma.size() > kMaxFinalSetN) throw std::invalid_argument("final_set: n exceeds the cap of 6");
  std::set<Permutation> layer{sigma};
  while (cycle_count(*layer.begin()) > 1) {
    std::set<Permutation> next;
    for (const auto& p : layer) {
      for (const auto& [i, j] : admissible_merge_pairs(p)) {
        next.insert(compose(p, transposition(p.size(), i, j)));
      }
    }
    layer = std::move(next);
  }
  return std::vector<Permutation>(layer.begin(), layer.end());
}

// Exact increments of a statistic along the merge walk. All maxima are over
// integer statistic values; `scale` only converts them for display.
struct EpsilonTable {
  Label n = 0;
  double scale = 1.0;
  // Index k = cycle count, 1..n; entries for k < 2 are 0.
  std::vector<int64_t> step_max_by_cycles;   // epsilon_{n,k}: one merge step from k cycles
  int64_t step_max = 0;                      // epsilon_n: max over k
  std::vector<int64_t> final_max_by_cycles;  // epsilon'_{n,k}: sigma vs final_set(sigma)

  double eps(Label k) const { return static_cast<double>(step_max_by_cycles[static_cast<size_t>(k)]) / scale; }
  double eps_n() const { return static_cast<double>(step_max) / scale; }
  double eps_prime(Label k) const { return static_cast<double>(final_max_by_cycles[static_cast<size_t>(k)]) / scale; }
};

template <typename F>
EpsilonTable exact_epsilon(Label n, F&& statistic, double scale) {
  if (n < 1 || n > kMaxFinalSetN) throw std::invalid_argument("exact_epsilon: n outside 1..6");
  if (!(scale > 0.0)) throw std::invalid_argument("exact_epsilon: scale must be positive");
  EpsilonTable table;
  table.n = n;
  table.scale = scale;
  table.step_max_by_cycles.assign(static_cast<size_t>(n) + 1, 0);
  table.final_max_by_cycles.assign(static_cast<size_t>(n) + 1, 0);

  for (const auto& sigma : enumerate_sn(n)) {
    const auto k = static_cast<size_t>(cycle_count(sigma));
    const int64_t base = static_cast<int64_t>(statistic(sigma));
    for (const auto& [i, j] : admissible_merge_pairs(sigma)) {
      const int64_t next = static_cast<int64_t>(statistic(compose(sigma, transposition(n, i, j))));
      table.step_max_by_cycles[k] = std::max(table.step_max_by_cycles[k], std::abs(next - base));
    }
    for (const auto& rho : final_set(sigma)) {
      const int64_t v = static_cast<int64_t>(statistic(rho));
      table.final_max_by_cycles[k] = std::max(table.final_max_by_cycles[k], std::abs(v - base));
    }
  }
  table.step_max = *std::max_element(table.step_max_by_cycles.begin(), table.step_max_by_cycles.end());

  // Chain inequality: eps'_{n,k} <= sum_{i=2..k} eps_{n,i} <= (k-1) eps_n.
  // A violation would be an implementation defect, not data.
  int64_t running = 0;
  for (Label k = 1; k <= n; ++k) {
    running += table.step_max_by_cycles[static_cast<size_t>(k)];
    if (table.final_max_by_cycles[static_cast<size_t>(k)] > running ||
        running > static_cast<int64_t>(k - 1) * table.step_max) {
      throw std::logic_error("exact_epsilon: increment chain inequality violated");
    }
  }
  return table;
}

// Exhaustive verification record for one inequality. The witness string is a
// complete reproduction recipe (n, permutation, transposition, values).
struct LemmaReport {
  std::string lemma;
  Label n_lo = 0;
  Label n_hi = 0;
  std::string bound;
  std::string max_attained;
  std::string witness;
  bool pass = false;
  bool tight = false;
};

namespace detail {

// No-touch probability of the merge walk run to a single cycle: the chance
// that no step's transposition uses a position of W. The walk's law depends
// on the current cycle partition only through block sizes and per-block W
// counts, so states are canonical multisets of (size, count) pairs,
// memoized globally.
inline Rational window_no_touch(std::vector<std::pair<Label, Label>> state,
                                std::map<std::vector<std::pair<Label, Label>>, Rational>& memo) {
  if (state.size() <= 1) return Rational(1);
  std::sort(state.begin(), state.end());
  const auto it = memo.find(state);
  if (it != memo.end()) return it->second;

  int64_t total_pairs = 0;  // ordered pairs across distinct blocks
  int64_t total_size = 0;
  for (const auto& [size, count] : state) total_size += size;
  for (const auto& [size, count] : state) total_pairs += static_cast<int64_t>(size) * (total_size - size);

  Rational no_touch(0);
  for (size_t a = 0; a < state.size(); ++a) {
    for (size_t b = 0; b < state.size(); ++b) {
      if (a == b) continue;
      const auto [sa, wa] = state[a];
      const auto [sb, wb] = state[b];
      // Ordered pair (i in block a, j in block b), both avoiding W.
      const int64_t good = static_cast<int64_t>(sa - wa) * (sb - wb);
      if (good == 0) continue;
      std::vector<std::pair<Label, Label>> next;
      next.reserve(state.size() - 1);
      for (size_t c = 0; c < state.size(); ++c) {
        if (c == a || c == b) continue;
        next.push_back(state[c]);
      }
      next.emplace_back(static_cast<Label>(sa + sb), static_cast<Label>(wa + wb));
      no_touch = no_touch + Rational(good, total_pairs) * window_no_touch(std::move(next), memo);
    }
  }
  memo.emplace(std::move(state), no_touch);
  return no_touch;
}

inline std::vector<std::pair<Label, Label>> all_transpositions(Label n) {
  std::vector<std::pair<Label, Label>> out;
  for (Label i = 1; i <= n; ++i) {
    for (Label j = i + 1; j <= n; ++j) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace detail

inline std::vector<std::string> registered_lemmas() {
  return {"lis-bound",          "lambda-prefix-bound", "lambda-i-bound",    "las-bound",
          "local-bound",        "square-fixed-points", "walk-window-touch"};
}

inline LemmaReport verify_lemma(const std::string& id, Label n_lo, Label n_hi) {
  const auto names = registered_lemmas();
  if (std::find(names.begin(), names.end(), id) == names.end()) {
    throw std::invalid_argument("verify_lemma: unknown lemma id: " + id);
  }
  if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("verify_lemma: bad n range");
  const Label cap = (id == "square-fixed-points") ? 8 : (id == "walk-window-touch" ? kMaxFinalSetN : 7);
  if (n_hi > cap) throw std::invalid_argument("verify_lemma: n range exceeds the cap for " + id);

  LemmaReport report;
  report.lemma = id;
  report.n_lo = n_lo;
  report.n_hi = n_hi;
  report.pass = true;

  if (id == "square-fixed-points") {
    // fix(sigma^2) >= 6 #(sigma) - 3 fix(sigma) - 2n, no transposition
    // quantifier; tight when equality is attained.
    report.bound = "fix(sigma^2) >= 6#(sigma) - 3 fix(sigma) - 2n";
    int64_t min_slack = INT64_MAX;
    for (Label n = n_lo; n <= n_hi; ++n) {
      for (const auto& sigma : enumerate_sn(n)) {
        const int64_t lhs = trace_power(sigma, 2);
        const int64_t rhs = 6 * cycle_count(sigma) - 3 * fixed_point_count(sigma) - 2 * n;
        const int64_t slack = lhs - rhs;
        if (slack < 0) report.pass = false;
        if (slack < min_slack) {
          min_slack = slack;
          report.max_attained = "min slack " + std::to_string(slack);
          report.witness = "n=" + std::to_string(n) + " sigma=" + sigma.cycle_string() +
                           " lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs);
        }
        if (slack == 0) report.tight = true;
      }
    }
    return report;
  }

  if (id == "walk-window-touch") {
    // For a class-uniform (hence conjugation-invariant) input: the chance
    // that the walk to a single cycle moves any position of W(A, m) is at
    // most 2 #(lambda) |A| m / n. The class average depends on W only
    // through its size w, with the per-cycle mark counts hypergeometric.
    // (The pointwise-in-sigma variant is false: a marked singleton cycle is
    // touched with probability 1.)
    report.bound = "E_class P(touch W(A,m)) <= 2 #(lambda) |A| m / n";
    std::map<std::vector<std::pair<Label, Label>>, Rational> memo;
    Rational worst_ratio(0);
    std::vector<std::vector<int64_t>> choose(static_cast<size_t>(n_hi) + 1,
                                             std::vector<int64_t>(static_cast<size_t>(n_hi) + 1, 0));
    for (size_t a = 0; a < choose.size(); ++a) {
      choose[a][0] = 1;
      for (size_t b = 1; b <= a; ++b) choose[a][b] = choose[a - 1][b - 1] + (b <= a - 1 ? choose[a - 1][b] : 0);
    }
    for (Label n = n_lo; n <= n_hi; ++n) {
      for (const auto& lambda : all_partitions(n)) {
        const auto& parts = lambda.parts();
        const auto ell = static_cast<int64_t>(lambda.length());
        // Average touch probability for each mark count w.
        std::vector<Rational> avg_touch(static_cast<size_t>(n) + 1, Rational(0));
        for (Label w = 1; w <= n; ++w) {
          std::vector<std::pair<Label, Label>> state(parts.size());
          Rational total(0);
          const std::function<void(size_t, Label, int64_t)> assign = [&](size_t idx, Label left, int64_t ways) {
            if (idx == parts.size()) {
              if (left != 0) return;
              Rational weight(ways, choose[static_cast<size_t>(n)][static_cast<size_t>(w)]);
              total = total +
                      weight * (Rational(1) - detail::window_no_touch(state, memo));
              return;
            }
            const Label cap = std::min(parts[idx], left);
            for (Label wi = 0; wi <= cap; ++wi) {
              state[idx] = {parts[idx], wi};
              assign(idx + 1, static_cast<Label>(left - wi), ways * choose[static_cast<size_t>(parts[idx])][static_cast<size_t>(wi)]);
            }
          };
          assign(0, w, 1);
          avg_touch[static_cast<size_t>(w)] = total;
        }

        for (uint32_t mask = 1; mask < (1u << n); ++mask) {
          std::vector<Label> a_set;
          for (Label x = 1; x <= n; ++x) {
            if (mask & (1u << (x - 1))) a_set.push_back(x);
          }
          for (Label m = 1; m <= n; ++m) {
            // W(A, m) = {a - t : a in A, 0 <= t < m} clipped to 1..n.
            std::vector<char> in_w(static_cast<size_t>(n) + 1, 0);
            Label w = 0;
            for (const Label a : a_set) {
              for (Label t = 0; t < m; ++t) {
                if (a - t >= 1 && !in_w[static_cast<size_t>(a - t)]) {
                  in_w[static_cast<size_t>(a - t)] = 1;
                  ++w;
                }
              }
            }
            const Rational& p_touch = avg_touch[static_cast<size_t>(w)];
            const Rational bound(2 * ell * static_cast<int64_t>(a_set.size()) * m, n);
            if (p_touch > bound) report.pass = false;
            const Rational ratio = p_touch / bound;
            if (worst_ratio < ratio) {
              worst_ratio = ratio;
              report.max_attained = "max E[touch]/bound = " + ratio.to_string();
              report.witness = "n=" + std::to_string(n) + " lambda=" + lambda.to_string() + " |A|=" +
                               std::to_string(a_set.size()) + " m=" + std::to_string(m) +
                               " E[touch]=" + p_touch.to_string() + " bound=" + bound.to_string();
              if (ratio == Rational(1)) report.tight = true;
            }
          }
        }
      }
    }
    return report;
  }

  // The remaining lemmas quantify over sigma and ALL transpositions tau and
  // bound |f(sigma tau) - f(sigma)| by a constant (or by 2km n^{k-1} for
  // k-local window statistics).
  int64_t worst = -1;
  for (Label n = n_lo; n <= n_hi; ++n) {
    const auto perms = enumerate_sn(n);
    const auto taus = detail::all_transpositions(n);

    const auto scan = [&](auto&& f, int64_t bound, const std::string& bound_text) {
      report.bound = bound_text;
      for (const auto& sigma : perms) {
        const int64_t base = f(sigma);
        for (const auto& [i, j] : taus) {
          const int64_t next = f(compose(sigma, transposition(n, i, j)));
          const int64_t d = std::abs(next - base);
          if (d > bound) report.pass = false;
          if (d > worst) {
            worst = d;
            report.max_attained = std::to_string(d);
            report.witness = "n=" + std::to_string(n) + " sigma=" + sigma.one_line_string() + " tau=(" +
                             std::to_string(i) + " " + std::to_string(j) + ") before=" + std::to_string(base) +
                             " after=" + std::to_string(next);
          }
          if (d == bound) report.tight = true;
        }
      }
    };

    if (id == "lis-bound") {
      scan([](const Permutation& p) { return lis(p); }, 2, "|delta LIS| <= 2");
    } else if (id == "lambda-prefix-bound") {
      report.bound = "|delta (lambda_1+...+lambda_i)| <= 2";
      for (const auto& sigma : perms) {
        const auto shape_a = rsk_shape(sigma);
        for (const auto& [i, j] : taus) {
          const auto shape_b = rsk_shape(compose(sigma, transposition(n, i, j)));
          int64_t pa = 0;
          int64_t pb = 0;
          for (Label idx = 1; idx <= n; ++idx) {
            pa += shape_a.part(static_cast<size_t>(idx - 1));
            pb += shape_b.part(static_cast<size_t>(idx - 1));
            const int64_t d = std::abs(pa - pb);
            if (d > 2) report.pass = false;
            if (d > worst) {
              worst = d;
              report.max_attained = std::to_string(d);
              report.witness = "n=" + std::to_string(n) + " sigma=" + sigma.one_line_string() + " tau=(" +
                               std::to_string(i) + " " + std::to_string(j) + ") prefix_index=" + std::to_string(idx) +
                               " before=" + std::to_string(pa) + " after=" + std::to_string(pb);
            }
            if (d == 2) report.tight = true;
          }
        }
      }
    } else if (id == "lambda-i-bound") {
      report.bound = "|delta lambda_i| <= 4";
      for (const auto& sigma : perms) {
        const auto shape_a = rsk_shape(sigma);
        for (const auto& [i, j] : taus) {
          const auto shape_b = rsk_shape(compose(sigma, transposition(n, i, j)));
          for (Label idx = 1; idx <= n; ++idx) {
            const int64_t d = std::abs(static_cast<int64_t>(shape_a.part(static_cast<size_t>(idx - 1))) -
                                       shape_b.part(static_cast<size_t>(idx - 1)));
            if (d > 4) report.pass = false;
            if (d > worst) {
              worst = d;
              report.max_attained = std::to_string(d);
              report.witness = "n=" + std::to_string(n) + " sigma=" + sigma.one_line_string() + " tau=(" +
                               std::to_string(i) + " " + std::to_string(j) + ") part_index=" + std::to_string(idx);
            }
            if (d == 4) report.tight = true;
          }
        }
      }
    } else if (id == "las-bound") {
      scan([](const Permutation& p) { return las(p); }, 6, "|delta LAS| <= 6");
    } else if (id == "local-bound") {
      // Window statistics: counts of fully adjacent patterns of size k; one
      // pattern per statistic (m = 1), bound 2 k m n^{k-1}.
      const std::vector<std::pair<VincularPattern, Label>> locals = {
          {{Permutation::parse("2,1"), {1}}, 2},            // descents
          {{Permutation::parse("1,3,2"), {1, 2}}, 3},       // left peaks
          {{Permutation::parse("2,3,1"), {1, 2}}, 3},       // right peaks
          {{Permutation::parse("1,2,3"), {1, 2}}, 3},       // double ascents
      };
      report.bound = "|delta N| <= 2 k m n^{k-1}, m=1";
      for (const auto& [pattern, k] : locals) {
        int64_t nk = 1;
        for (Label t = 1; t < k; ++t) nk *= n;
        const int64_t bound = 2 * static_cast<int64_t>(k) * nk;
        for (const auto& sigma : perms) {
          const auto base = static_cast<int64_t>(vincular_count(sigma, pattern));
          for (const auto& [i, j] : taus) {
            const auto next =
                static_cast<int64_t>(vincular_count(compose(sigma, transposition(n, i, j)), pattern));
            const int64_t d = std::abs(next - base);
            if (d > bound) report.pass = false;
            if (d > worst) {
              worst = d;
              report.max_attained = std::to_string(d);
              report.witness = "n=" + std::to_string(n) + " sigma=" + sigma.one_line_string() + " tau=(" +
                               std::to_string(i) + " " + std::to_string(j) + ") pattern_size=" + std::to_string(k);
            }
            if (d == bound) report.tight = true;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace permlab
