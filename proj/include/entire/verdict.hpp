#pragma once

#include <variant>

#include "entire/certificate.hpp"
#include "entire/laurent.hpp"
#include "entire/reduction.hpp"

namespace entire {

struct Entire {
  Certificate certificate;
};

struct NotEntire {
  Witness witness;
};

using Verdict = std::variant<Entire, NotEntire>;

inline bool is_entire(const Verdict& v) { return std::holds_alternative<Entire>(v); }

/// Runs the reduction to completion. The system has only entire solutions
/// iff every level has a rank-deficient support lattice until a constant
/// one-variable system is reached.
inline Verdict decide(const OdeSystem& sys) {
  ReductionRun run = run_reduction(sys);
  if (run.failure) return NotEntire{make_witness(run)};
  GaussianVector base{run.terminal[0].coefficient(zero_exponent(1))};
  return Entire{build(run.steps, base)};
}

}  // namespace entire
