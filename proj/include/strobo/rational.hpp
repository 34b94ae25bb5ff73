#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace strobo {

// Exact rational arithmetic on int64 with 128-bit intermediates.
// Overflow of the reduced result throws instead of wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(int64_t n) : num_(n), den_(1) {}
  Rational(int64_t n, int64_t d) { assign(n, d); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                   (__int128)a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void assign(int64_t n, int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<int64_t>(n);
    r.den_ = static_cast<int64_t>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  int64_t num_;
  int64_t den_;
};

}  // namespace strobo
