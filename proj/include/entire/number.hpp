#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace entire {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer exponent vector of a monomial Z^α. Ordered lexicographically.
using Exponent = std::vector<Integer>;

inline Exponent make_exponent(std::initializer_list<long long> entries) {
  Exponent e;
  e.reserve(entries.size());
  for (long long x : entries) e.emplace_back(x);
  return e;
}

inline Exponent zero_exponent(std::size_t n) { return Exponent(n, Integer(0)); }

inline bool is_zero_exponent(const Exponent& e) {
  for (const auto& x : e)
    if (x != 0) return false;
  return true;
}

/// num/den with den != 0; the sign is moved onto the numerator since the
/// two-argument rational constructor rejects negative denominators.
inline Rational make_rational(Integer num, Integer den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// "a" or "a/b" with b > 0, in lowest terms.
inline std::string to_string(const Rational& r) {
  const Integer& den = denominator(r);
  if (den == 1) return numerator(r).str();
  return numerator(r).str() + "/" + den.str();
}

/// Parses "[-]digits[/digits]". Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
  auto is_digits = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+'))
      s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_digits(num, true))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::string num_str(num);
  if (num_str.front() == '+') num_str.erase(0, 1);
  if (slash == std::string_view::npos) return Rational(Integer(num_str));
  std::string_view den = text.substr(slash + 1);
  if (!is_digits(den, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return make_rational(Integer(num_str), d);
}

/// Element of ℚ(i). Both parts are kept in lowest terms by the underlying
/// rational type, so equality is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit by design of the field embedding
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long long re) : re_(re) {}  // NOLINT
  GaussianRational(int re) : re_(re) {}        // NOLINT
  GaussianRational(const Integer& re) : re_(re) {}  // NOLINT

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |x|² = re² + im², exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const {
    return {re_.convert_to<double>(), im_.convert_to<double>()};
  }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

using GaussianVector = std::vector<GaussianRational>;

/// "a", "(a+bi)", "(a-bi)" or "(0+bi)"; the parenthesised form is only used
/// when the imaginary part is nonzero.
inline std::string to_string(const GaussianRational& x) {
  if (x.is_real()) return to_string(x.re());
  std::string s = "(" + to_string(x.re());
  if (x.im() < 0)
    s += "-" + to_string(Rational(-x.im()));
  else
    s += "+" + to_string(x.im());
  return s + "i)";
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& x) {
  return os << to_string(x);
}

/// Floor division for arbitrary-precision integers (b != 0).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Narrows an exponent entry for floating-point evaluation.
inline long long to_machine_int(const Integer& x) {
  if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
    throw std::overflow_error("exponent does not fit in a machine integer: " + x.str());
  return x.convert_to<long long>();
}

}  // namespace entire
