#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entire/errors.hpp"
#include "entire/lattice.hpp"
#include "entire/number.hpp"

namespace entire {

/// Sparse multivariate Laurent polynomial over ℚ(i).
///
/// Terms live in a map keyed by exponent vector (lexicographic order); a zero
/// coefficient is never stored, so the zero polynomial is the empty map. The
/// variable count is carried separately so that zero still knows its ring.
/// Variables are indexed from 0 in this API and from 1 in text.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, GaussianRational>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const GaussianRational& c) {
    LaurentPoly p(nvars);
    p.add_term(zero_exponent(nvars), c);
    return p;
  }

  static LaurentPoly monomial(Exponent e, const GaussianRational& c = 1) {
    LaurentPoly p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  /// The coordinate function z_{index+1}.
  static LaurentPoly variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars)
      throw std::out_of_range("variable index " + std::to_string(index) + " >= " + std::to_string(nvars));
    Exponent e = zero_exponent(nvars);
    e[index] = 1;
    return monomial(std::move(e));
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_zero_exponent(terms_.begin()->first));
  }

  GaussianRational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  /// Accumulates c·Z^e, dropping the term if it cancels.
  void add_term(Exponent e, const GaussianRational& c) {
    if (e.size() != nvars_)
      throw DimensionMismatch("exponent of length " + std::to_string(e.size()) +
                              " in a polynomial over " + std::to_string(nvars_) + " variables");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  LaurentPoly& operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const GaussianRational& s) { return a *= s; }
  friend LaurentPoly operator*(const GaussianRational& s, LaurentPoly a) { return a *= s; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same_ring(b);
    LaurentPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_ring(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_)
      throw DimensionMismatch("polynomials over " + std::to_string(nvars_) + " and " +
                              std::to_string(o.nvars_) + " variables");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline LaurentPoly scalar_mul(const GaussianRational& s, const LaurentPoly& f) { return s * f; }

/// ∂f/∂z_{index+1}.
inline LaurentPoly partial(const LaurentPoly& f, std::size_t index) {
  if (index >= f.nvars())
    throw std::out_of_range("partial derivative in variable " + std::to_string(index) +
                            " of a polynomial over " + std::to_string(f.nvars()) + " variables");
  LaurentPoly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[index] == 0) continue;
    Exponent d = e;
    d[index] -= 1;
    r.add_term(std::move(d), c * GaussianRational(e[index]));
  }
  return r;
}

/// Multiplies every term by Z^shift.
inline LaurentPoly shift(const LaurentPoly& f, const Exponent& shift_by) {
  LaurentPoly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    Exponent s = e;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += shift_by[i];
    r.add_term(std::move(s), c);
  }
  return r;
}

/// Reinterprets f as a polynomial in more variables; the new trailing
/// variables do not occur.
inline LaurentPoly embed(const LaurentPoly& f, std::size_t nvars) {
  if (nvars < f.nvars())
    throw DimensionMismatch("cannot embed " + std::to_string(f.nvars()) + "-variable polynomial into " +
                            std::to_string(nvars) + " variables");
  LaurentPoly r(nvars);
  for (const auto& [e, c] : f.terms()) {
    Exponent x = e;
    x.resize(nvars, Integer(0));
    r.add_term(std::move(x), c);
  }
  return r;
}

/// The right-hand side of ż_i = z_i·p_i(z), i = 1..n, with every p_i a
/// Laurent polynomial in the same n variables.
class OdeSystem {
 public:
  OdeSystem() = default;
  explicit OdeSystem(std::vector<LaurentPoly> rhs) : p_(std::move(rhs)) {
    if (p_.empty()) throw DimensionMismatch("a system needs at least one component");
    for (std::size_t i = 0; i < p_.size(); ++i)
      if (p_[i].nvars() != p_.size())
        throw DimensionMismatch("component " + std::to_string(i + 1) + " is over " +
                                std::to_string(p_[i].nvars()) + " variables in a " +
                                std::to_string(p_.size()) + "-dimensional system");
  }

  static OdeSystem zero(std::size_t n) { return OdeSystem(std::vector<LaurentPoly>(n, LaurentPoly(n))); }

  std::size_t dimension() const { return p_.size(); }
  const LaurentPoly& operator[](std::size_t i) const { return p_[i]; }
  const std::vector<LaurentPoly>& rhs() const { return p_; }

  friend bool operator==(const OdeSystem&, const OdeSystem&) = default;

 private:
  std::vector<LaurentPoly> p_;
};

/// Σ_i z_i·∂p_i/∂z_i. Vanishes identically exactly when the flow preserves
/// the form ∧ dz_i/z_i.
inline LaurentPoly log_divergence(const OdeSystem& sys) {
  const std::size_t n = sys.dimension();
  LaurentPoly total(n);
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e = zero_exponent(n);
    e[i] = 1;
    total += shift(partial(sys[i], i), e);
  }
  return total;
}

/// Exponents that occur with a nonzero coefficient in some component.
inline std::set<Exponent> support(const OdeSystem& sys) {
  std::set<Exponent> out;
  for (const auto& p : sys.rhs())
    for (const auto& [e, c] : p.terms()) out.insert(e);
  return out;
}

/// Rewrites f(Z) as g(M) with M_j = Z^(row j of basis).
inline LaurentPoly rewrite_in_basis(const LaurentPoly& f, const HnfBasis& basis) {
  if (f.nvars() != basis.cols())
    throw DimensionMismatch("rewriting a " + std::to_string(f.nvars()) + "-variable polynomial in a basis of " +
                            std::to_string(basis.cols()) + " columns");
  LaurentPoly g(basis.rank());
  for (const auto& [e, c] : f.terms()) {
    auto coords = coordinates(e, basis);
    if (!coords) {
      std::string s;
      for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + e[i].str();
      throw NotInLattice("exponent (" + s + ") is not in the lattice");
    }
    g.add_term(std::move(*coords), c);
  }
  return g;
}

/// Same as above for an arbitrary matrix with ℚ-independent rows.
inline LaurentPoly rewrite_in_basis(const LaurentPoly& f, const IntMatrix& rows) {
  if (f.nvars() != rows.cols())
    throw DimensionMismatch("rewriting a " + std::to_string(f.nvars()) + "-variable polynomial in rows " +
                            rows.shape());
  LaurentPoly g(rows.rows());
  for (const auto& [e, c] : f.terms()) {
    auto coords = integer_coordinates(e, rows);
    if (!coords) {
      std::string s;
      for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + e[i].str();
      throw NotInLattice("exponent (" + s + ") is not in the lattice");
    }
    g.add_term(std::move(*coords), c);
  }
  return g;
}

/// g(M) with M_j replaced by Z^(row j of rows); the result lives in
/// rows.cols() variables. Distinct M-exponents may collide and combine.
inline LaurentPoly substitute_monomials(const LaurentPoly& g, const IntMatrix& rows) {
  if (g.nvars() != rows.rows())
    throw DimensionMismatch("substituting " + rows.shape() + " monomials into a " +
                            std::to_string(g.nvars()) + "-variable polynomial");
  LaurentPoly f(rows.cols());
  for (const auto& [e, c] : g.terms()) f.add_term(row_combination(e, rows), c);
  return f;
}

/// Floating-point form of a Laurent polynomial, prepared once and evaluated
/// many times by the integrator.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const LaurentPoly& f) : nvars_(f.nvars()) {
    for (const auto& [e, c] : f.terms()) {
      Term t{c.to_complex(), {}};
      t.exponents.reserve(e.size());
      for (const auto& x : e) t.exponents.push_back(to_machine_int(x));
      terms_.push_back(std::move(t));
    }
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }

  /// Checks for 0^k with k < 0 before evaluating.
  std::complex<double> operator()(std::span<const std::complex<double>> point) const {
    if (point.size() != nvars_)
      throw DimensionMismatch("evaluating a " + std::to_string(nvars_) + "-variable polynomial at a point of length " +
                              std::to_string(point.size()));
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < nvars_; ++i)
        if (t.exponents[i] < 0 && point[i] == 0.0)
          throw ZeroAtNegativeExponent("coordinate " + std::to_string(i + 1) + " is zero");
    return evaluate_unchecked(point);
  }

  std::complex<double> evaluate_unchecked(std::span<const std::complex<double>> point) const {
    std::complex<double> sum = 0.0;
    for (const auto& t : terms_) {
      std::complex<double> term = t.coeff;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (t.exponents[i] != 0) term *= ipow(point[i], t.exponents[i]);
      sum += term;
    }
    return sum;
  }

 private:
  struct Term {
    std::complex<double> coeff;
    std::vector<long long> exponents;
  };

  static std::complex<double> ipow(std::complex<double> base, long long k) {
    bool invert = k < 0;
    unsigned long long m = invert ? 0ULL - static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
    std::complex<double> acc = 1.0;
    while (m) {
      if (m & 1ULL) acc *= base;
      base *= base;
      m >>= 1;
    }
    return invert ? 1.0 / acc : acc;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

inline std::complex<double> evaluate(const LaurentPoly& f, std::span<const std::complex<double>> point) {
  return CompiledPoly(f)(point);
}

}  // namespace entire
