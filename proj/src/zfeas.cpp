#include "ssqc/zfeas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <type_traits>

namespace ssqc::zfeas {

using bitspace::BitString;
using bitspace::ResidueClass;
using exactnum::Int;
using exactnum::LinearSystem;
using exactnum::Rational;
using exactnum::SolveStatus;

ZFeasibilityLP build_lp(const std::vector<ResidueClass>& classes) {
  if (classes.empty()) throw std::invalid_argument("build_lp: no classes");
  const int K = static_cast<int>(classes.size());
  for (const auto& cls : classes)
    if (cls.members.empty()) throw std::invalid_argument("build_lp: empty residue class");
  const int n = classes[0].members[0].n;
  for (const auto& cls : classes)
    for (BitString x : cls.members)
      if (x.n != n) throw std::invalid_argument("build_lp: mixed string lengths");

  ZFeasibilityLP lp;
  lp.n = n;
  lp.K = K;
  lp.block_start.assign(static_cast<std::size_t>(K) + 1, 0);
  for (int j = 0; j < K; ++j)
    lp.block_start[j + 1] = lp.block_start[j] + classes[j].members.size();
  const std::size_t cols = lp.block_start[K];
  const std::size_t rows = static_cast<std::size_t>(K - 1) * n + K;
  lp.system = LinearSystem(rows, cols);
  lp.column_index.reserve(cols);
  for (int j = 0; j < K; ++j)
    for (BitString x : classes[j].members) lp.column_index.push_back({j, x});

  // Matching rows: sum over block 0 of (1-2x_i) p minus the same over block j.
  for (int j = 1; j < K; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t r = static_cast<std::size_t>(j - 1) * n + i;
      for (std::size_t c = lp.block_start[0]; c < lp.block_start[1]; ++c)
        lp.system.at(r, c) = lp.column_index[c].x.bit(i) ? -1 : 1;
      for (std::size_t c = lp.block_start[j]; c < lp.block_start[j + 1]; ++c)
        lp.system.at(r, c) = lp.column_index[c].x.bit(i) ? 1 : -1;
    }
  }
  for (int j = 0; j < K; ++j) {
    const std::size_t r = static_cast<std::size_t>(K - 1) * n + j;
    for (std::size_t c = lp.block_start[j]; c < lp.block_start[j + 1]; ++c)
      lp.system.at(r, c) = 1;
    lp.system.b[r] = 1;
  }
  return lp;
}

namespace {

struct OverflowSignal {};

// Fraction-free pivot update (a*p - c*r)/d; the division is exact by the
// Bareiss subdeterminant identity, so a nonzero remainder means corruption.
std::int64_t combine(std::int64_t a, std::int64_t p, std::int64_t c, std::int64_t r,
                     std::int64_t d) {
  __int128 v = static_cast<__int128>(a) * p - static_cast<__int128>(c) * r;
  if (v % d != 0) throw std::logic_error("phase1: inexact integer pivot");
  __int128 q = v / d;
  if (q > std::numeric_limits<std::int64_t>::max() ||
      q < std::numeric_limits<std::int64_t>::min())
    throw OverflowSignal{};
  return static_cast<std::int64_t>(q);
}

Int combine(const Int& a, const Int& p, const Int& c, const Int& r, const Int& d) {
  Int v = a * p - c * r;
  Int q, rem;
  boost::multiprecision::divide_qr(v, d, q, rem);
  if (rem != 0) throw std::logic_error("phase1: inexact integer pivot");
  return q;
}

bool ratio_less(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
  return static_cast<__int128>(a1) * b2 < static_cast<__int128>(a2) * b1;
}

bool ratio_less(const Int& a1, const Int& b1, const Int& a2, const Int& b2) {
  return a1 * b2 < a2 * b1;
}

template <class NumT>
NumT to_num(const Int& v) {
  if constexpr (std::is_same_v<NumT, Int>) {
    return v;
  } else {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw OverflowSignal{};
    return v.convert_to<std::int64_t>();
  }
}

// Phase-1 simplex on A p = b, p >= 0, b >= 0: start from an all-artificial
// basis and drive the artificial mass to zero under Bland's rule. The
// tableau is kept as integers over a positive common denominator; pivot
// elements are positive, so stored signs equal real signs throughout.
// Artificial columns are implicit and never re-enter once they leave.
template <class NumT>
std::optional<std::vector<Rational>> run_phase1(const LinearSystem& sys) {
  using Acc = std::conditional_t<std::is_same_v<NumT, Int>, Int, __int128>;
  const std::size_t R = sys.rows, C = sys.cols;
  std::vector<NumT> tab(R * (C + 1));
  auto at = [&](std::size_t i, std::size_t j) -> NumT& { return tab[i * (C + 1) + j]; };
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) at(i, j) = to_num<NumT>(sys.at(i, j));
    if (sys.b[i] < 0) throw std::logic_error("phase1: negative right-hand side");
    at(i, C) = to_num<NumT>(sys.b[i]);
  }
  NumT den = NumT(1);
  std::vector<long> basis(R);
  for (std::size_t i = 0; i < R; ++i) basis[i] = static_cast<long>(C + i);
  std::vector<char> in_basis(C, 0);
  std::vector<std::size_t> art_rows;

  for (;;) {
    art_rows.clear();
    for (std::size_t i = 0; i < R; ++i)
      if (basis[i] >= static_cast<long>(C)) art_rows.push_back(i);
    if (art_rows.empty()) break;

    // Entering column (Bland): first nonbasic index whose phase-1 price is
    // positive, i.e. increasing it strictly reduces the artificial mass.
    std::size_t q = C;
    for (std::size_t j = 0; j < C && q == C; ++j) {
      if (in_basis[j]) continue;
      Acc z = 0;
      for (std::size_t i : art_rows) z += Acc(at(i, j));
      if (z > 0) q = j;
    }
    if (q == C) {
      Acc obj = 0;
      for (std::size_t i : art_rows) obj += Acc(at(i, C));
      if (obj != 0) return std::nullopt;  // optimum leaves artificial mass
      break;
    }

    // Leaving row (Bland): minimum ratio over positive entries, ties toward
    // the smallest basic variable index.
    std::size_t r = R;
    for (std::size_t i = 0; i < R; ++i) {
      if (!(at(i, q) > 0)) continue;
      if (r == R || ratio_less(at(i, C), at(i, q), at(r, C), at(r, q)) ||
          (!ratio_less(at(r, C), at(r, q), at(i, C), at(i, q)) && basis[i] < basis[r]))
        r = i;
    }
    if (r == R) throw std::logic_error("phase1: improving column with no pivot row");

    const NumT p = at(r, q);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r) continue;
      const NumT ciq = at(i, q);
      for (std::size_t j = 0; j <= C; ++j)
        at(i, j) = combine(at(i, j), p, ciq, at(r, j), den);
    }
    if (basis[r] < static_cast<long>(C)) in_basis[basis[r]] = 0;
    basis[r] = static_cast<long>(q);
    in_basis[q] = 1;
    den = p;
  }

  std::vector<Rational> flat(C, Rational(0));
  for (std::size_t i = 0; i < R; ++i)
    if (basis[i] < static_cast<long>(C))
      flat[basis[i]] = Rational(Int(at(i, C)), Int(den));
  return flat;
}

bool satisfies(const ZFeasibilityLP& lp, const std::vector<Rational>& p) {
  if (p.size() != lp.system.cols) return false;
  for (const auto& v : p)
    if (v < 0) return false;
  for (std::size_t i = 0; i < lp.system.rows; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < lp.system.cols; ++j)
      if (lp.system.at(i, j) != 0) acc += Rational(lp.system.at(i, j)) * p[j];
    if (acc != Rational(lp.system.b[i])) return false;
  }
  return true;
}

ProbabilityTable to_table(const ZFeasibilityLP& lp, const std::vector<Rational>& p) {
  ProbabilityTable table;
  table.blocks.resize(lp.K);
  for (std::size_t c = 0; c < p.size(); ++c)
    table.blocks[lp.column_index[c].j].emplace(lp.column_index[c].x, p[c]);
  return table;
}

// Incremental exact rank tracker over column vectors in Q^R.
class RankTracker {
 public:
  explicit RankTracker(std::size_t rows) : rows_(rows) {}

  bool would_grow(const std::vector<Rational>& col) const {
    std::vector<Rational> v = reduce(col);
    return std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
  }

  bool add(const std::vector<Rational>& col) {
    std::vector<Rational> v = reduce(col);
    std::size_t lead = rows_;
    for (std::size_t i = 0; i < rows_; ++i)
      if (v[i] != 0) {
        lead = i;
        break;
      }
    if (lead == rows_) return false;
    Rational inv = v[lead];
    for (auto& x : v) x /= inv;
    pivots_.push_back(lead);
    vecs_.push_back(std::move(v));
    return true;
  }

  std::size_t rank() const { return vecs_.size(); }

 private:
  std::vector<Rational> reduce(std::vector<Rational> v) const {
    for (std::size_t k = 0; k < vecs_.size(); ++k) {
      const Rational& coeff = v[pivots_[k]];
      if (coeff == 0) continue;
      Rational f = coeff;  // vecs_[k][pivots_[k]] == 1
      for (std::size_t i = 0; i < rows_; ++i) v[i] -= f * vecs_[k][i];
    }
    return v;
  }

  std::size_t rows_;
  std::vector<std::vector<Rational>> vecs_;
  std::vector<std::size_t> pivots_;
};

std::vector<Rational> column_of(const LinearSystem& sys, std::size_t c) {
  std::vector<Rational> v(sys.rows);
  for (std::size_t i = 0; i < sys.rows; ++i) v[i] = Rational(sys.at(i, c));
  return v;
}

// Basis route of the reconstruction pipeline; nullopt hands over to the
// projection route.
std::optional<ProbabilityTable> try_bfs_basis(const ZFeasibilityLP& lp,
                                              const std::vector<double>& numeric) {
  const std::size_t C = lp.system.cols;
  RankTracker full(lp.system.rows);
  for (std::size_t c = 0; c < C; ++c) full.add(column_of(lp.system, c));
  const std::size_t target = full.rank();

  std::vector<std::size_t> order(C);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(numeric[a]) > std::fabs(numeric[b]);
  });

  RankTracker chosen(lp.system.rows);
  std::vector<std::size_t> selected;
  for (std::size_t c : order) {
    if (chosen.rank() == target) break;
    if (chosen.add(column_of(lp.system, c))) selected.push_back(c);
  }
  if (chosen.rank() != target) return std::nullopt;
  std::sort(selected.begin(), selected.end());

  LinearSystem sub(lp.system.rows, selected.size());
  for (std::size_t i = 0; i < lp.system.rows; ++i)
    for (std::size_t k = 0; k < selected.size(); ++k)
      sub.at(i, k) = lp.system.at(i, selected[k]);
  sub.b = lp.system.b;
  auto res = solve_exact(sub);
  if (res.status != SolveStatus::kUnique) return std::nullopt;

  std::vector<Rational> flat(C, Rational(0));
  for (std::size_t k = 0; k < selected.size(); ++k) flat[selected[k]] = res.solution[k];
  if (!satisfies(lp, flat)) return std::nullopt;
  return to_table(lp, flat);
}

// p += particular solution of A d = b - A p; false when no solution exists.
bool reproject(const ZFeasibilityLP& lp, std::vector<Rational>& p) {
  std::vector<Rational> resid(lp.system.rows);
  for (std::size_t i = 0; i < lp.system.rows; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < lp.system.cols; ++j)
      if (lp.system.at(i, j) != 0) acc += Rational(lp.system.at(i, j)) * p[j];
    resid[i] = Rational(lp.system.b[i]) - acc;
  }
  auto res = solve_exact_with_rhs(lp.system, resid);
  if (res.status == SolveStatus::kInconsistent) return false;
  for (std::size_t j = 0; j < p.size(); ++j) p[j] += res.solution[j];
  return true;
}

}  // namespace

FeasibilityResult solve_feasibility(const ZFeasibilityLP& lp) {
  std::optional<std::vector<Rational>> flat;
  try {
    flat = run_phase1<std::int64_t>(lp.system);
  } catch (const OverflowSignal&) {
    flat = run_phase1<Int>(lp.system);
  }
  if (!flat.has_value()) return Infeasible{};
  if (!satisfies(lp, *flat))
    throw std::logic_error("solve_feasibility: basic solution failed exact re-check");
  return to_table(lp, *flat);
}

Int default_denominator_bound(int m, int n) { return Int(2) * m * n; }

ProbabilityTable exact_bfs_reconstruct(const ZFeasibilityLP& lp,
                                       const std::vector<double>& numeric,
                                       const Int& max_den) {
  if (numeric.size() != lp.system.cols)
    throw std::invalid_argument("exact_bfs_reconstruct: numeric length mismatch");
  if (auto table = try_bfs_basis(lp, numeric)) return *table;
  return rationalize_by_projection(lp, numeric, max_den);
}

ProbabilityTable rationalize_by_projection(const ZFeasibilityLP& lp,
                                           const std::vector<double>& numeric,
                                           const Int& max_den) {
  if (numeric.size() != lp.system.cols)
    throw std::invalid_argument("rationalize_by_projection: numeric length mismatch");
  if (max_den < 1)
    throw std::invalid_argument("rationalize_by_projection: denominator bound < 1");

  std::vector<Rational> p(numeric.size());
  for (std::size_t c = 0; c < numeric.size(); ++c)
    p[c] = exactnum::cf_round(numeric[c], max_den);
  if (!reproject(lp, p))
    throw ReconstructionError("rationalize_by_projection: correction system inconsistent");

  auto negative = [&]() {
    return std::any_of(p.begin(), p.end(), [](const Rational& v) { return v < 0; });
  };
  for (int round = 0; round < 2 && negative(); ++round) {
    for (auto& v : p)
      if (v < 0) v = 0;
    if (!reproject(lp, p))
      throw ReconstructionError("rationalize_by_projection: re-projection inconsistent");
  }
  if (negative())
    throw ReconstructionError("rationalize_by_projection: negatives persist after clipping");

  // Normalization rows already force unit block sums; re-scale defensively so
  // a violated sum either heals or trips the final exact check.
  for (int j = 0; j < lp.K; ++j) {
    Rational sum(0);
    for (std::size_t c = lp.block_start[j]; c < lp.block_start[j + 1]; ++c) sum += p[c];
    if (sum == 0)
      throw ReconstructionError("rationalize_by_projection: zero block sum");
    if (sum != 1)
      for (std::size_t c = lp.block_start[j]; c < lp.block_start[j + 1]; ++c) p[c] /= sum;
  }
  if (!satisfies(lp, p))
    throw ReconstructionError("rationalize_by_projection: exact validation failed");
  return to_table(lp, p);
}

}  // namespace ssqc::zfeas
