#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <algorithm>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "entire/errors.hpp"
#include "entire/lattice.hpp"
#include "entire/laurent.hpp"
#include "entire/reduction.hpp"

namespace entire {

/// Normal form of a system with only entire solutions:
///
///   p(Z) = Σ_{k=1}^{n-1} u[k]·θ_k(M^(k)) + u0,
///
/// where M^(n) = Z and M^(k-1)_i = Π_j (M^(k)_j)^{A[k]_ij}. Each u[k] is
/// annihilated by the exponent matrix of M^(k), i.e. A[k+1]·…·A[n]·u[k] = 0,
/// which makes every M^(k)_i a first integral of the θ_k term.
struct Certificate {
  std::size_t n = 1;
  std::map<std::size_t, IntMatrix> A;          // k = 2..n, shape (k-1)×k
  std::map<std::size_t, GaussianVector> u;     // k = 1..n-1, length n
  GaussianVector u0;                           // length n
  std::map<std::size_t, LaurentPoly> theta;    // k = 1..n-1, k variables

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Empty string if every map has the right keys and shapes, else a reason.
inline std::string shape_problem(const Certificate& c) {
  if (c.n == 0) return "n must be positive";
  if (c.u0.size() != c.n) return "u0 has length " + std::to_string(c.u0.size());
  if (c.A.size() != c.n - 1) return "expected " + std::to_string(c.n - 1) + " A matrices";
  if (c.u.size() != c.n - 1) return "expected " + std::to_string(c.n - 1) + " u vectors";
  if (c.theta.size() != c.n - 1) return "expected " + std::to_string(c.n - 1) + " theta polynomials";
  for (std::size_t k = 2; k <= c.n; ++k) {
    auto it = c.A.find(k);
    if (it == c.A.end()) return "missing A[" + std::to_string(k) + "]";
    if (it->second.rows() != k - 1 || it->second.cols() != k)
      return "A[" + std::to_string(k) + "] has shape " + it->second.shape();
  }
  for (std::size_t k = 1; k < c.n; ++k) {
    auto u = c.u.find(k);
    if (u == c.u.end()) return "missing u[" + std::to_string(k) + "]";
    if (u->second.size() != c.n) return "u[" + std::to_string(k) + "] has length " + std::to_string(u->second.size());
    auto t = c.theta.find(k);
    if (t == c.theta.end()) return "missing theta[" + std::to_string(k) + "]";
    if (t->second.nvars() != k)
      return "theta[" + std::to_string(k) + "] is over " + std::to_string(t->second.nvars()) + " variables";
  }
  return {};
}

/// Exponent matrices of the monomial vectors: level k is k×n, level n is the
/// identity and level k-1 = A[k]·(level k). Requires valid shapes.
inline std::map<std::size_t, IntMatrix> monomial_vectors(const Certificate& c) {
  std::map<std::size_t, IntMatrix> levels;
  levels[c.n] = IntMatrix::identity(c.n);
  for (std::size_t k = c.n; k >= 2; --k) levels[k - 1] = c.A.at(k) * levels[k];
  return levels;
}

/// The system described by a certificate. Throws InvalidCertificate on a
/// shape or kernel violation.
inline OdeSystem expand(const Certificate& c) {
  if (auto why = shape_problem(c); !why.empty()) throw InvalidCertificate(why);
  auto levels = monomial_vectors(c);
  for (std::size_t k = 1; k < c.n; ++k) {
    auto image = multiply(levels[k], c.u.at(k));
    for (const auto& x : image)
      if (!x.is_zero()) throw InvalidCertificate("u[" + std::to_string(k) + "] violates its kernel condition");
  }
  std::vector<LaurentPoly> p;
  for (std::size_t i = 0; i < c.n; ++i) p.push_back(LaurentPoly::constant(c.n, c.u0[i]));
  for (std::size_t k = 1; k < c.n; ++k) {
    LaurentPoly t = substitute_monomials(c.theta.at(k), levels[k]);
    for (std::size_t i = 0; i < c.n; ++i)
      if (!c.u.at(k)[i].is_zero()) p[i] += c.u.at(k)[i] * t;
  }
  return OdeSystem(std::move(p));
}

/// Assembles a certificate from the steps of an Entire decision, innermost
/// first. `base_u0` is the constant right-hand side of the one-variable
/// system the recursion ended at.
///
/// For each step (outermost last) the inner certificate for Dm = a·f(m) is
/// lifted: u[k] = preimage of v[k] under a, and what remains of f lies in
/// Ker a, which is one-dimensional. Non-constant remainder terms become
/// θ_{n-1}; the constant remainder is folded into u0, so θ's never carry
/// constants and u0 is exactly the constant part of p.
inline Certificate build(std::span<const ReductionStep> trace, const GaussianVector& base_u0) {
  if (base_u0.size() != 1) throw DimensionMismatch("innermost constant must have length 1");
  Certificate inner;
  inner.n = 1;
  inner.u0 = base_u0;

  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    const ReductionStep& step = *it;
    const std::size_t n = step.level;
    if (inner.n != n - 1) throw InternalError("trace levels are not consecutive");

    auto inner_levels = monomial_vectors(inner);
    Certificate outer;
    outer.n = n;
    outer.A = inner.A;
    outer.A[n] = step.a;
    outer.theta = inner.theta;

    std::vector<LaurentPoly> g = step.f;
    for (std::size_t k = 1; k < n - 1; ++k) {
      GaussianVector lifted = solve_preimage(step.a, inner.u.at(k));
      LaurentPoly t = substitute_monomials(inner.theta.at(k), inner_levels[k]);
      for (std::size_t i = 0; i < n; ++i)
        if (!lifted[i].is_zero()) g[i] -= lifted[i] * t;
      outer.u[k] = std::move(lifted);
    }
    GaussianVector u0 = solve_preimage(step.a, inner.u0);
    for (std::size_t i = 0; i < n; ++i) g[i] -= LaurentPoly::constant(n - 1, u0[i]);

    auto kernel = kernel_rational(step.a);
    if (kernel.size() != 1) throw InternalError("reduction matrix does not have a one-dimensional kernel");
    GaussianVector w;
    for (const auto& x : kernel.front()) w.emplace_back(x);
    std::size_t lead = 0;
    while (w[lead].is_zero()) ++lead;

    std::set<Exponent> exps;
    for (const auto& gi : g)
      for (const auto& [e, c] : gi.terms()) exps.insert(e);
    LaurentPoly theta(n - 1);
    for (const auto& e : exps) {
      GaussianRational scale = g[lead].coefficient(e) / w[lead];
      for (std::size_t i = 0; i < n; ++i)
        if (g[i].coefficient(e) != scale * w[i])
          throw InternalError("remainder coefficient is not proportional to the kernel generator");
      if (is_zero_exponent(e)) {
        for (std::size_t i = 0; i < n; ++i) u0[i] += scale * w[i];
      } else {
        theta.add_term(e, scale);
      }
    }
    outer.u[n - 1] = std::move(w);
    outer.theta[n - 1] = std::move(theta);
    outer.u0 = std::move(u0);
    inner = std::move(outer);
  }
  return inner;
}

/// Outcome of an independent certificate check.
struct VerifyReport {
  bool shapes_ok = false;
  bool kernel_ok = false;
  bool reconstruction_ok = false;
  std::string detail;

  bool passed() const { return shapes_ok && kernel_ok && reconstruction_ok; }
};

/// Checks a certificate against a system without going through the decision
/// procedure: shapes, the kernel conditions via explicit chain products, and
/// exact reconstruction of every component.
inline VerifyReport verify(const Certificate& c, const OdeSystem& sys) {
  VerifyReport report;
  if (auto why = shape_problem(c); !why.empty()) {
    report.detail = why;
    return report;
  }
  report.shapes_ok = true;

  // chain[k] = A[k+1]·…·A[n], the exponent matrix of M^(k).
  auto chain = [&c](std::size_t k) {
    std::vector<IntMatrix> mats;
    for (std::size_t j = k + 1; j <= c.n; ++j) mats.push_back(c.A.at(j));
    return matrix_chain_product(mats, c.n);
  };

  report.kernel_ok = true;
  for (std::size_t k = 1; k < c.n && report.kernel_ok; ++k) {
    IntMatrix prod = chain(k);
    const GaussianVector& uk = c.u.at(k);
    for (std::size_t r = 0; r < prod.rows(); ++r) {
      GaussianRational dot;
      for (std::size_t j = 0; j < c.n; ++j) dot += GaussianRational(prod(r, j)) * uk[j];
      if (!dot.is_zero()) {
        report.kernel_ok = false;
        report.detail = "kernel condition fails for u[" + std::to_string(k) + "]";
        break;
      }
    }
  }

  if (sys.dimension() != c.n) {
    report.detail = "certificate is for n=" + std::to_string(c.n) + ", system has " +
                    std::to_string(sys.dimension()) + " components";
    return report;
  }
  std::vector<LaurentPoly> terms;
  for (std::size_t k = 1; k < c.n; ++k) {
    IntMatrix exps = chain(k);
    LaurentPoly t(c.n);
    for (const auto& [e, coeff] : c.theta.at(k).terms()) {
      Exponent z = zero_exponent(c.n);
      for (std::size_t r = 0; r < exps.rows(); ++r)
        for (std::size_t j = 0; j < c.n; ++j) z[j] += e[r] * exps(r, j);
      t.add_term(std::move(z), coeff);
    }
    terms.push_back(std::move(t));
  }
  report.reconstruction_ok = true;
  for (std::size_t i = 0; i < c.n; ++i) {
    LaurentPoly rebuilt = LaurentPoly::constant(c.n, c.u0[i]);
    for (std::size_t k = 1; k < c.n; ++k) rebuilt += c.u.at(k)[i] * terms[k - 1];
    if (!(rebuilt == sys[i])) {
      report.reconstruction_ok = false;
      if (report.detail.empty()) report.detail = "component " + std::to_string(i + 1) + " does not match";
      break;
    }
  }
  return report;
}

/// Necessary condition for entireness: Σ z_i ∂p_i/∂z_i ≡ 0.
inline bool is_volume_preserving(const OdeSystem& sys) { return log_divergence(sys).is_zero(); }

struct RandomCertificateOptions {
  std::size_t n = 2;
  int entry_bound = 3;      // |A entries|, |θ exponents|, coefficient numerators
  std::size_t theta_terms = 3;
};

/// Deterministic random certificate. The A-chain is resampled until every
/// partial product A[k+1]·…·A[n] has full row rank; each u[k] is a random
/// nonzero integer combination of that product's kernel basis.
inline Certificate random_certificate(std::uint64_t seed, const RandomCertificateOptions& opt) {
  if (opt.n == 0 || opt.entry_bound <= 0) throw std::invalid_argument("random certificate bounds must be positive");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
  };
  const long long b = opt.entry_bound;
  auto random_gaussian = [&] {
    Rational re = make_rational(Integer(uniform(-b, b)), Integer(uniform(1, b)));
    Rational im = uniform(0, 1) ? make_rational(Integer(uniform(-b, b)), Integer(uniform(1, b))) : Rational(0);
    return GaussianRational(re, im);
  };

  Certificate c;
  c.n = opt.n;
  constexpr int kMaxResample = 1000;
  IntMatrix level = IntMatrix::identity(opt.n);
  std::map<std::size_t, IntMatrix> levels;
  levels[opt.n] = level;
  for (std::size_t k = opt.n; k >= 2; --k) {
    bool ok = false;
    for (int attempt = 0; attempt < kMaxResample && !ok; ++attempt) {
      IntMatrix a(k - 1, k);
      for (std::size_t i = 0; i < k - 1; ++i)
        for (std::size_t j = 0; j < k; ++j) a(i, j) = uniform(-b, b);
      IntMatrix next = a * levels[k];
      if (rank(next) == k - 1) {
        c.A[k] = std::move(a);
        levels[k - 1] = std::move(next);
        ok = true;
      }
    }
    if (!ok) throw std::runtime_error("random certificate: resampling cap exceeded");
  }

  for (std::size_t k = 1; k < opt.n; ++k) {
    auto kernel = kernel_rational(levels[k]);
    GaussianVector uk(opt.n);
    while (std::all_of(uk.begin(), uk.end(), [](const auto& x) { return x.is_zero(); })) {
      uk.assign(opt.n, GaussianRational());
      for (const auto& w : kernel) {
        GaussianRational coeff(Rational(uniform(-b, b)), Rational(uniform(-1, 1)));
        for (std::size_t j = 0; j < opt.n; ++j) uk[j] += coeff * GaussianRational(w[j]);
      }
    }
    c.u[k] = std::move(uk);

    LaurentPoly theta(k);
    std::size_t nterms = static_cast<std::size_t>(uniform(1, static_cast<long long>(opt.theta_terms)));
    for (std::size_t t = 0; t < nterms; ++t) {
      Exponent e(k);
      for (auto& x : e) x = uniform(-b, b);
      theta.add_term(std::move(e), random_gaussian());
    }
    c.theta[k] = std::move(theta);
  }
  for (std::size_t i = 0; i < opt.n; ++i) c.u0.push_back(random_gaussian());
  return c;
}

}  // namespace entire
