#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "entire/lattice.hpp"
#include "entire/laurent.hpp"

namespace entire {

/// One logarithmic-differentiation step. With m_j = Z^(row j of a) and
/// p(Z) = f(m), the monomials obey Dm = a·f(m), which is `subsystem`.
struct ReductionStep {
  std::size_t level = 0;           // variable count n of the incoming system
  HnfBasis basis;                  // lattice of the support, rank l < n
  IntMatrix a;                     // (n-1)×n; first l rows are `basis`
  std::vector<LaurentPoly> f;      // n polynomials in n-1 variables
  OdeSystem subsystem;             // n-1 variables, rhs = a·f
};

/// The support spans a full-rank lattice: the system has non-entire solutions.
struct FullRank {
  std::vector<Exponent> spanning_exponents;
};

using StepResult = std::variant<FullRank, ReductionStep>;

/// Tests the support lattice and, if it is deficient, performs one step.
/// A one-variable constant system is terminal and has no step to take.
inline StepResult reduce_step(const OdeSystem& sys) {
  const std::size_t n = sys.dimension();
  auto supp = support(sys);
  std::vector<Exponent> gens(supp.begin(), supp.end());
  HnfBasis basis = hnf(gens, n);
  if (basis.rank() == n) return FullRank{std::move(gens)};
  if (n == 1) throw std::domain_error("constant one-variable system admits no reduction step");

  ReductionStep step;
  step.level = n;
  step.a = complete_to_rank(basis, n - 1);
  step.f.reserve(n);
  for (const auto& p : sys.rhs()) step.f.push_back(embed(rewrite_in_basis(p, basis), n - 1));

  std::vector<LaurentPoly> q(n - 1, LaurentPoly(n - 1));
  for (std::size_t j = 0; j < n - 1; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (step.a(j, i) != 0) q[j] += GaussianRational(step.a(j, i)) * step.f[i];
  step.subsystem = OdeSystem(std::move(q));
  step.basis = std::move(basis);
  return step;
}

/// Failure evidence: the a-matrices of the successful steps, and a set of
/// support exponents of full rank at the level where the recursion stopped.
struct Witness {
  std::vector<IntMatrix> chain;
  std::size_t failing_level = 0;
  std::vector<Exponent> spanning_exponents;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Steps taken by the recursion and how it ended.
struct ReductionRun {
  std::vector<ReductionStep> steps;
  std::optional<FullRank> failure;  // set iff the verdict is NotEntire
  OdeSystem terminal;               // last system reached
};

inline ReductionRun run_reduction(const OdeSystem& sys) {
  ReductionRun run;
  OdeSystem current = sys;
  for (;;) {
    if (current.dimension() == 1 && current[0].is_constant()) break;
    auto result = reduce_step(current);
    if (auto* full = std::get_if<FullRank>(&result)) {
      run.failure = std::move(*full);
      break;
    }
    auto& step = std::get<ReductionStep>(result);
    OdeSystem next = step.subsystem;
    run.steps.push_back(std::move(step));
    current = std::move(next);
  }
  run.terminal = std::move(current);
  return run;
}

inline std::vector<ReductionStep> decision_trace(const OdeSystem& sys) { return run_reduction(sys).steps; }

inline Witness make_witness(const ReductionRun& run) {
  Witness w;
  for (const auto& s : run.steps) w.chain.push_back(s.a);
  w.failing_level = run.terminal.dimension();
  w.spanning_exponents = run.failure ? run.failure->spanning_exponents : std::vector<Exponent>{};
  return w;
}

}  // namespace entire
