#pragma once

// The Z-marginal matching feasibility program: construction, an exact
// phase-1 simplex decision procedure, and reconstruction of exact rational
// probability tables from floating-point solver output.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ssqc/bitspace.hpp"
#include "ssqc/exactnum.hpp"

namespace ssqc::zfeas {

struct ColumnRef {
  int j = 0;  // logical block
  bitspace::BitString x;

  bool operator==(const ColumnRef&) const = default;
};

// Equality system A p = b over the per-string probabilities, laid out as
// (K-1)*n matching rows (block 0 minus block j, entries in {-1,0,1}) followed
// by K normalization rows (entries in {0,1}, right-hand side 1). Columns are
// ordered by block, then lexicographically within a block.
struct ZFeasibilityLP {
  exactnum::LinearSystem system;
  std::vector<ColumnRef> column_index;
  std::vector<std::size_t> block_start;  // size K+1; block j = [start[j], start[j+1])
  int n = 0;
  int K = 0;
};

// Throws std::invalid_argument when a class is empty or sites disagree.
ZFeasibilityLP build_lp(const std::vector<bitspace::ResidueClass>& classes);

// Exact probabilities per block, zeros retained on the full support.
struct ProbabilityTable {
  std::vector<std::map<bitspace::BitString, exactnum::Rational>> blocks;
};

struct Infeasible {
  bool operator==(const Infeasible&) const = default;
};

using FeasibilityResult = std::variant<ProbabilityTable, Infeasible>;

// Phase-1 simplex with Bland's rule, run entirely in exact arithmetic via
// fraction-free integer pivoting (machine words with overflow escape to
// arbitrary precision). Deterministic: fixed column order in, one basic
// feasible solution out. Every returned table is re-asserted to satisfy
// A p = b and p >= 0 exactly.
FeasibilityResult solve_feasibility(const ZFeasibilityLP& lp);

// Raised when a floating-point vector cannot be turned into an exact valid
// table; sweep callers flag the instance rather than dropping it.
struct ReconstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Default denominator cap for rationalization: 2*m*n.
exactnum::Int default_denominator_bound(int m, int n);

// Basis route: pick columns by descending |numeric| (ties toward the lower
// index) while the rank grows, solve the square subsystem exactly, zero-fill
// the rest, and assert exact validity. Any failure falls through to
// rationalize_by_projection with the same inputs.
ProbabilityTable exact_bfs_reconstruct(const ZFeasibilityLP& lp,
                                       const std::vector<double>& numeric,
                                       const exactnum::Int& max_den);

// Rounding route: per-entry cf_round with denominator cap, exact correction
// solved from the residual system, then at most two clip-and-reproject
// rounds and exact block renormalization. Throws ReconstructionError when
// the final exact assertions cannot be met.
ProbabilityTable rationalize_by_projection(const ZFeasibilityLP& lp,
                                           const std::vector<double>& numeric,
                                           const exactnum::Int& max_den);

}  // namespace ssqc::zfeas
