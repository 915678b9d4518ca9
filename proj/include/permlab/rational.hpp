#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace permlab {

// Exact fraction on 64-bit words with 128-bit intermediates. Every operation
// reduces; a reduced value that does not fit 64 bits throws overflow_error
// instead of wrapping. The exact computations in this library (kernel windows
// inside {1..6}, walk matrices for n <= 6, Ewens masses for rational theta)
// stay far inside that range; the throw is a loud guard for misuse.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t value) : num_(value), den_(1) {}  // NOLINT(runtime/explicit)
  Rational(int64_t num, int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize(num, den);
  }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const auto g = gcd64(a.den_, b.den_);
    const __int128 num = static_cast<__int128>(a.num_) * (b.den_ / g) +
                         static_cast<__int128>(b.num_) * (a.den_ / g);
    const __int128 den = static_cast<__int128>(a.den_) * (b.den_ / g);
    return from128(num, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    const auto g1 = gcd64(std::abs(a.num_), b.den_);
    const auto g2 = gcd64(std::abs(b.num_), a.den_);
    const __int128 num = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    const __int128 den = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return from128(num, den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    Rational inv;
    if (b.num_ > 0) {
      inv.num_ = b.den_;
      inv.den_ = b.num_;
    } else {
      inv.num_ = -b.den_;
      inv.den_ = -b.num_;
    }
    return a * inv;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

 private:
  static int64_t gcd64(int64_t a, int64_t b) {
    while (b != 0) {
      const int64_t t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from128(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) return Rational();
    const __int128 g = gcd128(num, den);
    num /= g;
    den /= g;
    constexpr __int128 kMax = INT64_MAX;
    constexpr __int128 kMin = INT64_MIN;
    if (num > kMax || num < kMin || den > kMax) {
      throw std::overflow_error("Rational: value exceeds 64-bit storage");
    }
    Rational r;
    r.num_ = static_cast<int64_t>(num);
    r.den_ = static_cast<int64_t>(den);
    return r;
  }

  void normalize(int64_t num, int64_t den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    const int64_t g = gcd64(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  int64_t num_;
  int64_t den_;
};

}  // namespace permlab
