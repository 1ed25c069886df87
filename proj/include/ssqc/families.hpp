#pragma once

// Closed-form constructions that bypass the search: the two-slice extremal
// family, uniform even-parity families, and the fixed four-state
// shared-residue code with the diag(1,1,1,i) transversal gate. All three emit
// ordinary LogicalCode values so the audit path is construction-agnostic.

#include <string>
#include <vector>

#include "ssqc/codes.hpp"

namespace ssqc::families {

// Two-slice family: w = (1,...,1, m-(n-1)), S = (0, s). State 0 rides the
// extremal strings 0^n and 1^n; state 1 spreads the same masses over the
// weight-s slice (last bit 0) and the weight-t slice (last bit 1) with
// t = n-1+s-m. Valid whenever m >= n and m-(n-1) <= s <= n-1.
struct ExtremaFamilySpec {
  int n = 0;
  int m = 0;
  int s = 0;
};

struct ExtremaCode {
  codes::LogicalCode code;
  int t = 0;            // weight of the last-bit-1 slice: n-1+s-m
  bool screen_ok = true;
  std::string screen_note;  // filled when the sufficient shift screen fails
};

// Throws std::invalid_argument when m < n or s falls outside the two-slice
// window. A shift-screen violation (s = +-1 or +-(m-(n-1)) mod m) is not an
// error: the code is still built and the note says which check to run.
ExtremaCode build_extrema_code(const ExtremaFamilySpec& spec);

// Uniform superpositions over even-parity residue classes. Weights may be
// zero and unsorted; residues must be distinct with S[0] == 0. Every class
// must be non-empty and column-balanced (each site has ones in exactly half
// of the class); violations throw std::invalid_argument naming the class and
// site.
struct EvenParityFamilySpec {
  int n = 0;
  int m = 0;
  std::vector<int> w;
  std::vector<int> S;
};

codes::LogicalCode build_even_parity_code(const EvenParityFamilySpec& spec);

// The fixed ((6,4,2)) construction: m=4, w=(1,3,2,2,2,2), residues
// (0,0,0,1). States 0..2 share the residue-0 class and differ by character
// signs; state 3 carries residue 1. All 64 amplitudes have magnitude 1/4.
codes::LogicalCode build_642_code();

}  // namespace ssqc::families
