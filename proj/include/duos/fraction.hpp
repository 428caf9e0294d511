#pragma once

// Exact rational arithmetic for support/confidence thresholds and outlier
// scores.  Keeps every comparison bit-exact; no floating point anywhere in
// the decision paths.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace duos {

class Fraction {
public:
  constexpr Fraction() = default;
  Fraction(long long num, long long den) { assign(num, den); }

  static Fraction from_int(long long v) { return Fraction(v, 1); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  Fraction operator+(const Fraction& o) const {
    return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
  }
  Fraction operator-(const Fraction& o) const {
    return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
  }
  Fraction operator*(const Fraction& o) const {
    return make(i128(num_) * o.num_, i128(den_) * o.den_);
  }
  Fraction operator/(const Fraction& o) const {
    if (o.num_ == 0) throw std::domain_error("division by zero fraction");
    return make(i128(num_) * o.den_, i128(den_) * o.num_);
  }

  bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }
  bool operator<(const Fraction& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
  bool operator<=(const Fraction& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }
  bool operator>(const Fraction& o) const { return o < *this; }
  bool operator>=(const Fraction& o) const { return o <= *this; }

  // Decimal rendering, fixed number of places, round half away from zero.
  std::string to_decimal(int places) const {
    i128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    i128 n = i128(num_) * scale;
    bool neg = n < 0;
    if (neg) n = -n;
    i128 q = n / den_, r = n % den_;
    if (2 * r >= den_) ++q;
    i128 whole = q / scale, frac = q % scale;
    std::string digits;
    if (places > 0) {
      digits.assign(static_cast<size_t>(places), '0');
      for (int i = places - 1; i >= 0 && frac > 0; --i) {
        digits[static_cast<size_t>(i)] = char('0' + int(frac % 10));
        frac /= 10;
      }
    }
    std::string out = (neg && (whole > 0 || q > 0)) ? "-" : "";
    out += std::to_string(static_cast<long long>(whole));
    if (places > 0) {
      out += '.';
      out += digits;
    }
    return out;
  }

  // Accepts "3", "0.25", ".5" — plain decimal literals only.
  static Fraction parse_decimal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty fraction literal");
    size_t pos = 0;
    bool neg = text[0] == '-';
    if (neg || text[0] == '+') pos = 1;
    long long num = 0, den = 1;
    bool seen_digit = false, seen_dot = false;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c == '.') {
        if (seen_dot) throw std::invalid_argument("bad fraction literal: " + text);
        seen_dot = true;
        continue;
      }
      if (c < '0' || c > '9') throw std::invalid_argument("bad fraction literal: " + text);
      seen_digit = true;
      if (num > (INT64_MAX - 9) / 10 || (seen_dot && den > INT64_MAX / 10))
        throw std::overflow_error("fraction literal too long: " + text);
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
    }
    if (!seen_digit) throw std::invalid_argument("bad fraction literal: " + text);
    return Fraction(neg ? -num : num, den);
  }

private:
  using i128 = __int128;

  static Fraction make(i128 n, i128 d) {
    Fraction f;
    f.assign128(n, d);
    return f;
  }

  void assign(long long n, long long d) { assign128(n, d); }

  void assign128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("fraction overflow");
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace duos
