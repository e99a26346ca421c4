#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace maxmatch {

// Exact rational on int64, always normalized (den > 0, gcd(|num|, den) == 1).
// Tallies are corpus-scale integers, so int64 with __int128 cross products is
// ample headroom; overflow throws rather than wrapping.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  // Operands are pre-reduced pairwise so intermediates stay within int64 for
  // corpus-scale tallies; checked() still guards genuine overflow.
  friend Rational operator+(const Rational& a, const Rational& b) {
    const long long g = std::gcd(a.den_, b.den_);
    const long long scale_a = b.den_ / g;
    const long long scale_b = a.den_ / g;
    return Rational(checked(static_cast<__int128>(a.num_) * scale_a +
                            static_cast<__int128>(b.num_) * scale_b),
                    checked(static_cast<__int128>(a.den_) * scale_a));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    const long long g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
    const long long g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
    return Rational(checked(static_cast<__int128>(a.num_ / g1) * (b.num_ / g2)),
                    checked(static_cast<__int128>(a.den_ / g2) * (b.den_ / g1)));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
  static long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<long long>(v);
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  long long num_;
  long long den_;
};

}  // namespace maxmatch
