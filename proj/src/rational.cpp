#include "qlogic/rational.hpp"

#include <limits>
#include <stdexcept>

namespace ql {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (!fits(n) || !fits(d)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = (std::int64_t)n;
  r.den_ = (std::int64_t)d;
  return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

Rational Rational::parse(std::string_view text) {
  auto bad = [&]() { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto parse_int = [&](std::string_view s) -> __int128 {
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    if (i == s.size()) throw bad();
    __int128 v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw bad();
      v = v * 10 + (s[i] - '0');
      if (v > ((__int128)1 << 100)) throw std::overflow_error("rational literal too large");
    }
    return neg ? -v : v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18) throw bad();
    bool neg = !whole.empty() && whole[0] == '-';
    __int128 w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
    __int128 scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    __int128 f = parse_int(frac);
    if (w < 0) w = -w;
    __int128 n = w * scale + f;
    return make(neg ? -n : n, scale);
  }
  return make(parse_int(text), 1);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return make(-(__int128)num_, den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_, (__int128)a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_, (__int128)a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational::make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
}

}  // namespace ql
