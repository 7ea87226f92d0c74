#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rspace {

/// Exact rational scalar used for root coordinates and angle data.
/// Always stored normalized: positive denominator, gcd(num, den) = 1.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(long long n, long long d) { *this = reduced(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_nonnegative_integer() const { return den_ == 1 && num_ >= 0; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational operator-() const { return raw(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return reduced(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                   wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduced(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return reduced(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return wide(a.num_) * b.den_ < wide(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p", "-p" or "p/q". Returns nullopt on malformed input.
  static std::optional<Rational> parse(std::string_view text);

 private:
  using Wide = __int128;
  static Wide wide(long long v) { return static_cast<Wide>(v); }

  static Rational reduced(Wide n, Wide d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    Wide g = gcd_wide(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr Wide kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax)
      throw std::overflow_error("Rational: value out of 64-bit range");
    return raw(static_cast<long long>(n), static_cast<long long>(d));
  }

  static Rational raw(long long n, long long d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  static Wide gcd_wide(Wide a, Wide b) {
    while (b != 0) {
      Wide t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  long long num_ = 0;
  long long den_ = 1;
};

using RatVec = std::vector<Rational>;

inline Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("rational dot: dimension mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const RatVec& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

inline RatVec negated(const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

inline std::optional<Rational> Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<long long> {
    if (s.empty()) return std::nullopt;
    size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) return std::nullopt;
    long long v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      if (v > (INT64_MAX - (s[i] - '0')) / 10) return std::nullopt;
      v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
  };
  size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash));
  auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

}  // namespace rspace
