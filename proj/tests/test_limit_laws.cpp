#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "permlab/core.hpp"
#include "permlab/limit_laws.hpp"

using namespace permlab;
using Catch::Approx;

TEST_CASE("omega profile") {
  CHECK(omega(0.0) == Approx(2.0 / std::numbers::pi).epsilon(1e-12));
  CHECK(omega(1.0) == 1.0);
  CHECK(omega(-1.0) == 1.0);
  CHECK(omega(2.5) == 2.5);
  CHECK(omega(-3.0) == 3.0);
  CHECK(omega(0.5) == Approx((2.0 / std::numbers::pi) * (0.5 * std::asin(0.5) + std::sqrt(0.75))));
  CHECK(omega(0.999999) == Approx(1.0).margin(1e-5));
  CHECK(omega(0.3) == omega(-0.3));  // even up to the asin sign pairing
  for (double s = -1.5; s <= 1.5; s += 0.01) {
    CHECK(omega(s) >= std::abs(s) - 1e-12);  // profile dominates the tent
  }
}

TEST_CASE("bernoulli numbers") {
  const auto b = bernoulli_numbers(13);
  CHECK(b[0] == Rational(1));
  CHECK(b[1] == Rational(-1, 2));
  CHECK(b[2] == Rational(1, 6));
  CHECK(b[3] == Rational(0));
  CHECK(b[4] == Rational(-1, 30));
  CHECK(b[6] == Rational(1, 42));
  CHECK(b[8] == Rational(-1, 30));
  CHECK(b[10] == Rational(5, 66));
  CHECK(b[12] == Rational(-691, 2730));
}

TEST_CASE("k0 coefficients of 1/(1 - e^z)") {
  CHECK(k0(-5) == Rational(0));
  CHECK(k0(-2) == Rational(0));
  CHECK(k0(-1) == Rational(-1));
  CHECK(k0(0) == Rational(1, 2));
  CHECK(k0(1) == Rational(-1, 12));
  CHECK(k0(2) == Rational(0));
  CHECK(k0(3) == Rational(1, 720));
  CHECK(k0(4) == Rational(0));
  CHECK(k0(5) == Rational(-1, 30240));
  CHECK_THROWS_AS(k0(19), std::overflow_error);
}

TEST_CASE("descent window determinants") {
  CHECK(descent_window_probability({1}) == Rational(1, 2));
  CHECK(descent_window_probability({4}) == Rational(1, 2));
  CHECK(descent_window_probability({1, 2}) == Rational(1, 6));
  CHECK(descent_window_probability({1, 3}) == Rational(1, 4));
  CHECK(descent_window_probability({2, 3}) == Rational(1, 6));
  // Shift invariance of the Toeplitz kernel.
  CHECK(descent_window_probability({2, 4}) == descent_window_probability({1, 3}));
  CHECK(descent_window_probability({1, 2, 3}) == Rational(1, 24));
  CHECK_THROWS_AS(descent_window_probability({}), std::invalid_argument);
  CHECK_THROWS_AS(descent_window_probability({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(descent_window_probability({0, 2}), std::invalid_argument);
}

TEST_CASE("descent windows match exhaustive counts on S5 and S6") {
  for (Label n = 5; n <= 6; ++n) {
    std::vector<Label> w(static_cast<size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    // All windows inside {1..n-2} so the determinant form applies with n > max(A).
    std::vector<std::vector<int>> windows;
    for (int mask = 1; mask < (1 << (n - 2)); ++mask) {
      std::vector<int> a;
      for (int i = 0; i < n - 2; ++i) {
        if (mask & (1 << i)) a.push_back(i + 1);
      }
      windows.push_back(a);
    }
    std::vector<int64_t> hits(windows.size(), 0);
    int64_t total = 0;
    do {
      ++total;
      for (size_t wi = 0; wi < windows.size(); ++wi) {
        bool all = true;
        for (const int pos : windows[wi]) {
          if (!(w[static_cast<size_t>(pos - 1)] > w[static_cast<size_t>(pos)])) {
            all = false;
            break;
          }
        }
        if (all) ++hits[wi];
      }
    } while (std::next_permutation(w.begin(), w.end()));
    for (size_t wi = 0; wi < windows.size(); ++wi) {
      CHECK(descent_window_probability(windows[wi]) == Rational(hits[wi], total));
    }
  }
}

TEST_CASE("clicks variance constant") {
  CHECK(clicks_variance(2) == Rational(1, 36));
  CHECK(clicks_variance(3) > Rational(0));
  CHECK(clicks_variance(6) > Rational(0));
  CHECK_THROWS_AS(clicks_variance(1), std::invalid_argument);
  CHECK_THROWS_AS(clicks_variance(7), std::overflow_error);
}

TEST_CASE("alternating subsequence moments") {
  CHECK(las_mean(2) == Rational(3, 2));
  CHECK(las_mean(4) == Rational(17, 6));
  CHECK(las_var(4) == Rational(23, 36));
  CHECK(las_var(5) == Rational(49, 60));
  CHECK_THROWS_AS(las_mean(1), std::invalid_argument);
  CHECK_THROWS_AS(las_var(3), std::invalid_argument);
}

TEST_CASE("gaussian cdf") {
  CHECK(gaussian_cdf(0.0) == Approx(0.5).epsilon(1e-12));
  CHECK(gaussian_cdf(1.959963984540054) == Approx(0.975).epsilon(1e-9));
  CHECK(gaussian_cdf(-1.0) + gaussian_cdf(1.0) == Approx(1.0).epsilon(1e-12));
  CHECK(gaussian_cdf(3.0, 3.0, 4.0) == Approx(0.5).epsilon(1e-12));
  CHECK(gaussian_cdf(5.0, 3.0, 4.0) == Approx(gaussian_cdf(1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(gaussian_cdf(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("ks statistics") {
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
  const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic(grid, uniform_cdf) == Approx(0.0005).margin(1e-12));

  std::vector<double> shifted = grid;
  for (auto& x : shifted) x += 0.1;
  CHECK(two_sample_ks(grid, grid) == 0.0);
  CHECK(two_sample_ks(grid, shifted) == Approx(0.1).margin(2e-3));
  CHECK_THROWS_AS(ks_statistic({}, uniform_cdf), std::invalid_argument);
}

TEST_CASE("chi squared tail and quantiles") {
  CHECK(chi_squared_sf(0.0, 5.0) == Approx(1.0).epsilon(1e-12));
  CHECK(chi_squared_sf(3.841458820694124, 1.0) == Approx(0.05).epsilon(1e-9));
  CHECK(chi_squared_critical(1.0, 0.05) == Approx(3.841458820694124).epsilon(1e-9));
  CHECK(chi_squared_critical(10.0, 0.01) == Approx(23.209251158954356).epsilon(1e-9));
  // Median of chi2_2 is 2 ln 2.
  CHECK(chi_squared_critical(2.0, 0.5) == Approx(2.0 * std::log(2.0)).epsilon(1e-9));
  CHECK_THROWS_AS(chi_squared_critical(3.0, 0.0), std::invalid_argument);
}

TEST_CASE("g integral and lower bound constants") {
  // G(0) is the full area between the profile and the tent.
  CHECK(g_integral(0.0) == Approx(0.5).epsilon(1e-7));
  CHECK(g_integral(2.0) == Approx(0.0).margin(1e-9));
  CHECK(g_integral(0.3) < g_integral(0.1));
  CHECK(g_integral(1.0) > 0.0);

  const auto c = lower_bound_constants();
  CHECK(c.theta_prime == Approx(4.0 - std::sqrt(13.0)).epsilon(1e-12));
  CHECK(c.theta_double_prime == Approx(1.2111).margin(1e-3));
  CHECK(c.two_sqrt_theta == Approx(0.564).margin(1e-3));
  // The root actually solves the defining equation.
  CHECK(g_integral(2.0 * std::sqrt(c.theta_root)) == Approx((2.0 + c.theta_root) / 12.0).margin(1e-7));
}
