#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace diffnet {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational in canonical form: denominator > 0, gcd(|num|, den) = 1.
// Every weight/threshold comparison in this library is exact; there are no
// floating-point tolerances anywhere.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt numerator, BigInt denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    normalize();
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "a/b" in lowest terms; plain "a" when the denominator is 1.
  std::string str() const {
    std::string s = num_.str();
    if (den_ != 1) {
      s += '/';
      s += den_.str();
    }
    return s;
  }

  // Accepts "a", "a/b" and finite decimals like "0.25" (converted exactly).
  static Rational parse(std::string_view text) {
    auto fail = [&]() -> void {
      throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
    };
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      neg = text[pos] == '-';
      ++pos;
    }
    auto digits = [&](std::size_t& p) {
      std::size_t start = p;
      while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
      if (p == start) fail();
      return std::string(text.substr(start, p - start));
    };
    std::string head = digits(pos);
    BigInt num;
    BigInt den = 1;
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      std::string d = digits(pos);
      if (pos != text.size()) fail();
      num = BigInt(head);
      den = BigInt(d);
      if (den.is_zero()) fail();
    } else if (pos < text.size() && text[pos] == '.') {
      ++pos;
      std::string frac = digits(pos);
      if (pos != text.size()) fail();
      num = BigInt(head + frac);
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    } else {
      if (pos != text.size()) fail();
      num = BigInt(head);
    }
    if (neg) num = -num;
    return Rational(std::move(num), std::move(den));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_.is_zero()) den_ = 1;
  }

  BigInt num_ = 0;
  BigInt den_ = 1;
};

}  // namespace diffnet
