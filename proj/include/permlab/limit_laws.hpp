#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "permlab/rational.hpp"

namespace permlab {

// Limit profile of the rotated Young diagram: (2/pi)(s asin s + sqrt(1-s^2))
// inside [-1,1], |s| outside.
inline double omega(double s) {
  const double a = std::abs(s);
  if (a >= 1.0) return a;
  return (2.0 / std::numbers::pi) * (s * std::asin(s) + std::sqrt(1.0 - s * s));
}

// B_0..B_{count-1} in the convention with B_1 = -1/2, via
// sum_{k<=m} C(m+1,k) B_k = 0. Exact; overflows past ~B_20.
inline std::vector<Rational> bernoulli_numbers(int count) {
  std::vector<Rational> b;
  b.reserve(static_cast<size_t>(count));
  for (int m = 0; m < count; ++m) {
    if (m == 0) {
      b.emplace_back(1);
      continue;
    }
    // C(m+1, k) built incrementally.
    Rational acc(0);
    int64_t binom = 1;  // C(m+1, 0)
    for (int k = 0; k < m; ++k) {
      acc += Rational(binom) * b[static_cast<size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b.push_back(-acc / Rational(m + 1));
  }
  return b;
}

// Coefficient of z^i in 1/(1 - e^z): zero for i <= -2, else -B_{i+1}/(i+1)!.
inline Rational k0(int i) {
  if (i <= -2) return Rational(0);
  if (i >= 0 && i % 2 == 0 && i != 0) return Rational(0);  // odd Bernoulli vanish
  static const std::vector<Rational> kBernoulli = bernoulli_numbers(20);
  if (i + 1 >= static_cast<int>(kBernoulli.size())) {
    throw std::overflow_error("k0: index outside the exact 64-bit range (|i| <= 18)");
  }
  Rational fact(1);
  for (int t = 2; t <= i + 1; ++t) fact *= Rational(t);
  return -kBernoulli[static_cast<size_t>(i + 1)] / fact;
}

namespace detail {

inline __int128 checked_mul_i128(__int128 a, __int128 b) {
  __int128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("kernel determinant: 128-bit overflow");
  }
  return out;
}

inline __int128 gcd_i128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Exact determinant of a rational matrix via Bareiss elimination with
// per-row denominator clearing (keeps the scaled entries, and hence the
// fraction-free intermediates, as small as the matrix allows).
inline Rational exact_determinant(std::vector<std::vector<Rational>> m) {
  const size_t k = m.size();
  if (k == 0) return Rational(1);
  std::vector<std::vector<__int128>> a(k, std::vector<__int128>(k));
  __int128 den_total = 1;
  for (size_t r = 0; r < k; ++r) {
    __int128 row_lcm = 1;
    for (const auto& e : m[r]) {
      row_lcm = checked_mul_i128(row_lcm / gcd_i128(row_lcm, e.den()), e.den());
    }
    for (size_t c = 0; c < k; ++c) {
      a[r][c] = checked_mul_i128(m[r][c].num(), row_lcm / m[r][c].den());
    }
    den_total = checked_mul_i128(den_total, row_lcm);
  }
  int sign = 1;
  __int128 prev = 1;
  for (size_t p = 0; p + 1 < k; ++p) {
    if (a[p][p] == 0) {
      size_t swap_row = p + 1;
      while (swap_row < k && a[swap_row][p] == 0) ++swap_row;
      if (swap_row == k) return Rational(0);
      std::swap(a[p], a[swap_row]);
      sign = -sign;
    }
    for (size_t r = p + 1; r < k; ++r) {
      for (size_t c = p + 1; c < k; ++c) {
        a[r][c] = (checked_mul_i128(a[p][p], a[r][c]) - checked_mul_i128(a[r][p], a[p][c])) / prev;
      }
      a[r][p] = 0;
    }
    prev = a[p][p];
  }
  __int128 det = sign * a[k - 1][k - 1];
  __int128 den = den_total;
  const __int128 x = gcd_i128(det, den);
  if (x == 0) return Rational(0);
  det /= x;
  den /= x;
  constexpr __int128 kMax = INT64_MAX;
  if (det > kMax || -det > kMax || den > kMax) {
    throw std::overflow_error("kernel determinant: result exceeds 64-bit rational");
  }
  return Rational(static_cast<int64_t>(det), static_cast<int64_t>(den));
}

}  // namespace detail

// P(A is contained in the descent set of a uniform permutation), valid
// verbatim for any n > max(A): det [k0(a_c - a_r)] over the window A.
inline Rational descent_window_probability(std::vector<int> window) {
  if (window.empty()) throw std::invalid_argument("descent window: empty set");
  std::sort(window.begin(), window.end());
  for (size_t i = 0; i < window.size(); ++i) {
    if (window[i] < 1) throw std::invalid_argument("descent window: positions start at 1");
    if (i > 0 && window[i] == window[i - 1]) throw std::invalid_argument("descent window: repeated position");
  }
  const size_t k = window.size();
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
  for (size_t r = 0; r < k; ++r) {
    for (size_t c = 0; c < k; ++c) m[r][c] = k0(window[c] - window[r]);
  }
  return detail::exact_determinant(std::move(m));
}

// CLT variance of the length-j click (decreasing subsequence) count under the
// n^{2j-3/2} fluctuation scale.
inline Rational clicks_variance(int j) {
  if (j < 2) throw std::invalid_argument("clicks_variance: needs j >= 2");
  if (j > 6) throw std::overflow_error("clicks_variance: exact value exceeds 64-bit rational for j > 6");
  const auto binom = [](int64_t n, int64_t k) {
    __int128 r = 1;
    for (int64_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return static_cast<int64_t>(r);
  };
  int64_t fact = 1;
  for (int t = 2; t <= 2 * j - 1; ++t) fact *= t;
  const Rational central(binom(4 * j - 2, 2 * j - 1));
  const Rational small(binom(2 * j - 1, j));
  return (central - Rational(2) * small * small) / (Rational(2) * Rational(fact) * Rational(fact));
}

// Exact moments of the longest alternating subsequence under the uniform law.
inline Rational las_mean(int64_t n) {
  if (n < 2) throw std::invalid_argument("las_mean: formula holds for n >= 2");
  return Rational(4 * n + 1, 6);
}

inline Rational las_var(int64_t n) {
  if (n < 4) throw std::invalid_argument("las_var: formula holds for n >= 4");
  return Rational(32 * n - 13, 180);
}

inline double gaussian_cdf(double x, double mean = 0.0, double variance = 1.0) {
  if (variance <= 0.0) throw std::invalid_argument("gaussian_cdf: variance must be positive");
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

// Kolmogorov-Smirnov sup distance between a sample and a reference cdf.
inline double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

inline double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("two_sample_ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

namespace detail {

inline double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int k = 1; k < 500; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_cf(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x);
  return 1.0 - detail::gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

inline double chi_squared_sf(double x, double df) { return gamma_q(df / 2.0, x / 2.0); }

// Upper quantile: the x with P(Chi2_df > x) = alpha.
inline double chi_squared_critical(double df, double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("chi_squared_critical: alpha in (0,1)");
  double lo = 0.0;
  double hi = df + 20.0 * std::sqrt(2.0 * df) + 200.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (chi_squared_sf(mid, df) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double chi_squared_statistic(const std::vector<double>& observed,
                                    const std::vector<double>& expected) {
  if (observed.size() != expected.size()) throw std::invalid_argument("chi squared: size mismatch");
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi squared: nonpositive expected count");
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

// G(x) = integral over [-1,1] of (omega(s) - |s + x/2| - x/2)_+ ds, the
// profile-versus-tent excess that drives the fluctuation lower bound.
inline double g_integral(double x, double tol = 1e-9) {
  const auto f = [x](double s) {
    const double v = omega(s) - std::abs(s + x / 2.0) - x / 2.0;
    return v > 0.0 ? v : 0.0;
  };
  const double kink = -x / 2.0;
  if (kink > -1.0 && kink < 1.0) {
    return detail::integrate(f, -1.0, kink, tol / 2.0) + detail::integrate(f, kink, 1.0, tol / 2.0);
  }
  return detail::integrate(f, -1.0, 1.0, tol);
}

struct LowerBoundConstants {
  double theta_prime;        // 4 - sqrt(13)
  double theta_double_prime; // 2 sqrt(13) - 6
  double theta_root;         // solves G(2 sqrt(theta)) = (2 + theta)/12
  double two_sqrt_theta;     // ~ 0.564
};

inline LowerBoundConstants lower_bound_constants() {
  LowerBoundConstants out{};
  out.theta_prime = 4.0 - std::sqrt(13.0);
  out.theta_double_prime = 2.0 * std::sqrt(13.0) - 6.0;
  double lo = 0.0, hi = 1.0;
  const auto h = [](double theta) {
    return g_integral(2.0 * std::sqrt(theta)) - (2.0 + theta) / 12.0;
  };
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.theta_root = 0.5 * (lo + hi);
  out.two_sqrt_theta = 2.0 * std::sqrt(out.theta_root);
  return out;
}

}  // namespace permlab
