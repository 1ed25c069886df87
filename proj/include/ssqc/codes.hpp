#pragma once

// The code object: logical states with exact phase-times-root amplitudes,
// the induced transversal action, and exact expectation helpers.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssqc/bitspace.hpp"
#include "ssqc/exactnum.hpp"
#include "ssqc/zfeas.hpp"

namespace ssqc::codes {

// phase * sqrt(radicand): the phase is a reduced root-of-unity exponent
// (0/1 for +1, 1/2 for -1, 1/4 and 3/4 for +-i), the radicand a nonnegative
// rational. |amplitude|^2 == radicand exactly.
struct Amplitude {
  exactnum::PhaseFraction phase;
  exactnum::Rational radicand;

  bool operator==(const Amplitude&) const = default;
};

// Logical states keyed by support string. Multiple states may share one
// residue (degenerate labels); orthogonality then rests on phase structure.
struct LogicalCode {
  bitspace::SearchParams params;
  std::vector<std::map<bitspace::BitString, Amplitude>> states;

  int K() const { return static_cast<int>(states.size()); }
};

// Amplitudes sqrt(p_{j,x}) with phase +1; zero-probability strings dropped.
// Throws std::invalid_argument on block-count mismatch or negative entries.
LogicalCode assemble(const bitspace::SearchParams& params,
                     const zfeas::ProbabilityTable& probs);

// A support string sitting in the wrong residue class, named precisely.
struct EigenoperatorViolation : std::runtime_error {
  int j;
  bitspace::BitString x;

  EigenoperatorViolation(int state, bitspace::BitString offender)
      : std::runtime_error("logical state " + std::to_string(state) +
                           ": support string " + bitspace::render(offender) +
                           " does not lie in its residue class"),
        j(state),
        x(offender) {}
};

// The diagonal gate induced by the site-wise phase rotation: state j picks
// up the eigenphase exp(2*pi*i*S_j/m); the group it generates is cyclic of
// the stated order.
struct TransversalAction {
  std::vector<int> eigen_residues;            // S_j per state
  std::vector<exactnum::PhaseFraction> gate;  // reduced S_j/m per state
  int order = 1;
};

// Verifies every support residue exactly (integer arithmetic only) and
// throws EigenoperatorViolation on the first mismatch.
TransversalAction transversal_action(const LogicalCode& code);

// <Z_i> per state and site: sum over x of (1-2x_i)|a_{j,x}|^2, exact.
std::vector<std::vector<exactnum::Rational>> z_expectations(const LogicalCode& code);

// Exact <j|k> accumulated as a complex radical sum.
exactnum::ExactComplex state_inner_product(const LogicalCode& code, int j, int k);

// Exact squared norm of state j (phases drop out).
exactnum::Rational state_norm_squared(const LogicalCode& code, int j);

}  // namespace ssqc::codes
