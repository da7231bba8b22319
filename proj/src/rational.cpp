#include "smax/rational.hpp"

#include <charconv>
#include <limits>

#include "smax/errors.hpp"

namespace smax {

namespace {

using u128 = unsigned __int128;

u128 abs128(__int128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t to_i64_checked(__int128 v) {
  if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
    throw OverflowError("rational arithmetic overflow beyond 64-bit range");
  return static_cast<int64_t>(v);
}

}  // namespace

Rational Rational::normalize(__int128 num, __int128 den) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  u128 g = gcd128(abs128(num), abs128(den));
  num /= static_cast<__int128>(g);
  den /= static_cast<__int128>(g);
  Rational r;
  r.num_ = to_i64_checked(num);
  r.den_ = to_i64_checked(den);
  return r;
}

Rational::Rational(int64_t num, int64_t den) {
  *this = normalize(static_cast<__int128>(num), static_cast<__int128>(den));
}

Rational operator+(const Rational& a, const Rational& b) {
  __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
  __int128 den = static_cast<__int128>(a.den_) * b.den_;
  return Rational::normalize(num, den);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  __int128 num = static_cast<__int128>(a.num_) * b.num_;
  __int128 den = static_cast<__int128>(a.den_) * b.den_;
  return Rational::normalize(num, den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw InputError("rational division by zero");
  __int128 num = static_cast<__int128>(a.num_) * b.den_;
  __int128 den = static_cast<__int128>(a.den_) * b.num_;
  return Rational::normalize(num, den);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) {
    s += '/';
    s += std::to_string(den_);
  }
  return s;
}

Rational Rational::parse(const std::string& text) {
  auto parse_i64 = [&](const char* first, const char* last) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
      throw InputError("malformed rational literal: '" + text + "'");
    return v;
  };
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_i64(begin, end));
  int64_t num = parse_i64(begin, begin + slash);
  int64_t den = parse_i64(begin + slash + 1, end);
  return Rational(num, den);
}

}  // namespace smax
