#pragma once

#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "permlab/core.hpp"
#include "permlab/rational.hpp"
#include "permlab/rng.hpp"

namespace permlab {

inline Permutation sample_uniform(Label n, RandomSource& rng) {
  std::vector<Label> w(static_cast<size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  for (size_t i = w.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.below(i));
    std::swap(w[i - 1], w[j]);
  }
  return Permutation(std::move(w), Permutation::unchecked());
}

// Chinese-restaurant construction of the Ewens(theta) measure: element t
// opens a new cycle with probability theta/(theta+t-1), otherwise sits after
// a uniformly chosen earlier element. theta = 1 is uniform, theta = 0 is
// uniform on n-cycles; very large theta concentrates on the identity.
inline Permutation sample_ewens(Label n, double theta, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("sample_ewens: n must be at least 1");
  if (theta < 0.0) throw std::invalid_argument("sample_ewens: theta must be nonnegative");
  std::vector<Label> next(static_cast<size_t>(n));
  next[0] = 1;
  for (Label t = 2; t <= n; ++t) {
    const double p = theta / (theta + static_cast<double>(t - 1));
    if (rng.bernoulli(p)) {
      next[static_cast<size_t>(t - 1)] = t;
    } else {
      const Label j = static_cast<Label>(rng.below(static_cast<uint64_t>(t - 1))) + 1;
      next[static_cast<size_t>(t - 1)] = next[static_cast<size_t>(j - 1)];
      next[static_cast<size_t>(j - 1)] = t;
    }
  }
  return Permutation(std::move(next), Permutation::unchecked());
}

// Uniform permutation with the requested cycle type: bracket a uniform word
// into consecutive blocks of the part sizes. Every member of the class has
// exactly prod(parts) * prod(multiplicities!) preimages, so the draw is
// uniform on the class. The type of the result is asserted on every draw.
inline Permutation sample_cycle_type(const Partition& type, RandomSource& rng) {
  const int64_t n64 = type.n();
  if (n64 < 1) throw std::invalid_argument("sample_cycle_type: empty type");
  const Label n = static_cast<Label>(n64);
  const Permutation base = sample_uniform(n, rng);
  const auto& word = base.word();
  std::vector<Label> out(static_cast<size_t>(n));
  size_t start = 0;
  for (const Label part : type.parts()) {
    const size_t len = static_cast<size_t>(part);
    for (size_t k = 0; k < len; ++k) {
      out[static_cast<size_t>(word[start + k] - 1)] = word[start + (k + 1) % len];
    }
    start += len;
  }
  auto result = Permutation(std::move(out), Permutation::unchecked());
  if (cycle_type(result) != type) throw std::logic_error("sample_cycle_type: postcondition failed");
  return result;
}

// Base permutation of size n_per_color * m with an independent uniform color
// at every position.
inline ColoredPermutation sample_colored(Label n_per_color, Label m,
                                         const std::function<Permutation(Label, RandomSource&)>& base_law,
                                         RandomSource& rng) {
  if (n_per_color < 1 || m < 1) throw std::invalid_argument("sample_colored: sizes must be positive");
  const Label total = n_per_color * m;
  ColoredPermutation out;
  out.sigma = base_law(total, rng);
  out.num_colors = m;
  out.colors.resize(static_cast<size_t>(out.sigma.size()));
  for (auto& c : out.colors) c = static_cast<Label>(rng.below(static_cast<uint64_t>(m))) + 1;
  return out;
}

// Exact law of the cycle count under Ewens(theta): the count is a sum of
// independent Bernoulli(theta/(theta+i)) indicators, i = 0..n-1, with the
// i = 0 indicator always 1. Entry k-1 is P(# = k).
inline std::vector<Rational> cycle_count_pmf(Label n, const Rational& theta) {
  if (n < 1) throw std::invalid_argument("cycle_count_pmf: n must be at least 1");
  if (theta < Rational(0)) throw std::invalid_argument("cycle_count_pmf: theta must be nonnegative");
  std::vector<Rational> pmf(static_cast<size_t>(n), Rational(0));
  pmf[0] = Rational(1);
  for (Label i = 1; i < n; ++i) {
    const Rational p = theta / (theta + Rational(i));
    const Rational q = Rational(1) - p;
    for (Label k = std::min(i, static_cast<Label>(n - 1)); k >= 1; --k) {
      pmf[static_cast<size_t>(k)] = pmf[static_cast<size_t>(k)] * q + pmf[static_cast<size_t>(k - 1)] * p;
    }
    pmf[0] *= q;
  }
  return pmf;
}

inline std::vector<double> cycle_count_pmf_double(Label n, double theta) {
  if (n < 1) throw std::invalid_argument("cycle_count_pmf: n must be at least 1");
  if (theta < 0.0) throw std::invalid_argument("cycle_count_pmf: theta must be nonnegative");
  std::vector<double> pmf(static_cast<size_t>(n), 0.0);
  pmf[0] = 1.0;
  for (Label i = 1; i < n; ++i) {
    const double p = theta / (theta + static_cast<double>(i));
    for (Label k = std::min(i, static_cast<Label>(n - 1)); k >= 1; --k) {
      pmf[static_cast<size_t>(k)] = pmf[static_cast<size_t>(k)] * (1.0 - p) + pmf[static_cast<size_t>(k - 1)] * p;
    }
    pmf[0] *= 1.0 - p;
  }
  return pmf;
}

// Unnormalized-to-normalized Ewens mass theta^{#(sigma)-1} / prod_{i=1}^{n-1}(theta+i),
// exact for rational theta.
inline Rational ewens_mass(const Permutation& sigma, const Rational& theta) {
  const Label n = sigma.size();
  Rational denom(1);
  for (Label i = 1; i < n; ++i) denom *= theta + Rational(i);
  Rational num(1);  // empty product: theta = 0 with a single cycle still gets mass 1/(n-1)!
  const Label k = cycle_count(sigma);
  for (Label t = 1; t < k; ++t) num *= theta;
  return num / denom;
}

}  // namespace permlab
