#pragma once

// Fast combinatorial filters applied before any linear algebra: the modular
// shift screen, the union-distance gate, and heuristic strict-separation
// certificates that prove infeasibility without running a solver.

#include <optional>
#include <vector>

#include "ssqc/bitspace.hpp"
#include "ssqc/exactnum.hpp"

namespace ssqc::screens {

// First offending triple when the screen fails: flipping `site` maps a
// string of class `k` onto the residue of class `j` (S_j - S_k = +-w_site).
struct ShiftScreenFailure {
  int site = 0;  // 0-based
  int j = 0;
  int k = 0;

  bool operator==(const ShiftScreenFailure&) const = default;
};

// Passes (nullopt) iff S_j - S_k is never congruent to +-w_i (mod m) for any
// site i and j != k. Scan order: j ascending, k < j, site ascending; the
// first hit is returned. Requires canonical params.
std::optional<ShiftScreenFailure> shift_screen(const bitspace::SearchParams& params);

struct DistanceCheck {
  bool pass = false;            // union distance >= 2 (no pair counts as pass)
  std::optional<int> distance;  // nullopt when the union has < 2 strings
};

// The authoritative distance gate for the sweep; also reports the distance
// itself so callers can demand exactly 2.
DistanceCheck distance_check(const std::vector<bitspace::ResidueClass>& classes);

// Strict linear separation of two class sign-vector hulls:
//   max_{x in class_low} alpha.v(x)  <  beta  <  min_{x in class_high} alpha.v(x)
// with v the +-1 sign vector. A verified certificate proves the Z-marginal
// matching program has no solution.
struct SeparatorCertificate {
  std::vector<int> alpha;
  exactnum::Rational beta;
  int class_low = 0;
  int class_high = 0;
};

// Exact check of the two strict inequalities. Empty classes never verify.
bool verify_separator(const SeparatorCertificate& cert,
                      const std::vector<bitspace::ResidueClass>& classes);

// Tries alpha from the fixed family {+-e_i} u {all-ones} u {indicators of
// equal-weight coordinate groups} against every ordered class pair and
// returns each certificate that verifies. Heuristic: an empty result never
// implies feasibility.
std::vector<SeparatorCertificate> propose_separators(
    const bitspace::SearchParams& params,
    const std::vector<bitspace::ResidueClass>& classes);

}  // namespace ssqc::screens
