#pragma once

#include <cstdint>
#include <string>

namespace smax {

// Exact signed rational with 64-bit numerator and denominator. Every instance
// derived from graphs or CSPs stays integral; exactness keeps reassembly and
// value-integrity checks free of tolerances. Operations that would leave the
// 64-bit range throw OverflowError.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int64_t num, int64_t den);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "7", "-3" or "7/2".
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  /// Parses "7", "-3" or "7/2". Throws InputError on anything else.
  static Rational parse(const std::string& text);

 private:
  static Rational normalize(__int128 num, __int128 den);

  int64_t num_ = 0;
  int64_t den_ = 1;
};

}  // namespace smax
