#include "ssqc/zfeas.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"

using namespace ssqc;
using namespace ssqc::zfeas;
using bitspace::BitString;
using bitspace::parse_bits;
using bitspace::ResidueClass;
using bitspace::SearchParams;
using exactnum::Int;
using exactnum::LinearSystem;
using exactnum::Rational;
using exactnum::SolveStatus;

namespace {

SearchParams make(int n, int m, std::vector<int> w, std::vector<int> S) {
  SearchParams p;
  p.n = n;
  p.m = m;
  p.w = std::move(w);
  p.S = std::move(S);
  return p;
}

std::vector<Rational> flatten(const ZFeasibilityLP& lp, const ProbabilityTable& t) {
  std::vector<Rational> flat;
  flat.reserve(lp.system.cols);
  for (const auto& ref : lp.column_index) flat.push_back(t.blocks[ref.j].at(ref.x));
  return flat;
}

bool exact_ok(const ZFeasibilityLP& lp, const ProbabilityTable& t) {
  auto p = flatten(lp, t);
  for (const auto& v : p)
    if (v < 0) return false;
  for (std::size_t i = 0; i < lp.system.rows; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < lp.system.cols; ++j)
      acc += Rational(lp.system.at(i, j)) * p[j];
    if (acc != Rational(lp.system.b[i])) return false;
  }
  return true;
}

// Independent feasibility oracle: a polyhedron {Ap=b, p>=0} with no line is
// nonempty iff some basic solution is nonnegative, so enumerate all column
// subsets of size rank(A) and test each exactly.
bool brute_feasible(const LinearSystem& sys) {
  // rank via solve on all columns (status gives nullspace size)
  auto probe = solve_exact(sys);
  std::size_t rank;
  if (probe.status == SolveStatus::kInconsistent) {
    // rank of A alone: append zero rhs
    LinearSystem hom = sys;
    std::fill(hom.b.begin(), hom.b.end(), Int(0));
    auto h = solve_exact(hom);
    rank = sys.cols - h.nullspace_rank;
  } else {
    rank = sys.cols - probe.nullspace_rank;
  }
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
    if (pick.size() == rank) {
      LinearSystem sub(sys.rows, pick.size());
      for (std::size_t i = 0; i < sys.rows; ++i)
        for (std::size_t k = 0; k < pick.size(); ++k) sub.at(i, k) = sys.at(i, pick[k]);
      sub.b = sys.b;
      auto res = solve_exact(sub);
      if (res.status == SolveStatus::kInconsistent) return false;
      for (const auto& v : res.solution)
        if (v < 0) return false;
      return true;
    }
    for (std::size_t c = from; c < sys.cols; ++c) {
      pick.push_back(c);
      if (rec(c + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (rank == 0) {
    for (const auto& bi : sys.b)
      if (bi != 0) return false;
    return true;
  }
  return rec(0);
}

}  // namespace

TEST_CASE("program shapes and entry ranges") {
  // worked example: 5 matching + 2 normalization rows over 3+6 columns
  auto cls = residue_classes(make(5, 7, {1, 1, 2, 2, 2}, {0, 4}));
  auto lp = build_lp(cls);
  CHECK(lp.system.rows == 7);
  CHECK(lp.system.cols == 9);
  CHECK(lp.n == 5);
  CHECK(lp.K == 2);
  CHECK(lp.block_start == std::vector<std::size_t>{0, 3, 9});
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(lp.system.b[i] == 0);
    for (std::size_t j = 0; j < 9; ++j) {
      CHECK(lp.system.at(i, j) >= -1);
      CHECK(lp.system.at(i, j) <= 1);
    }
  }
  for (std::size_t i = 5; i < 7; ++i) {
    CHECK(lp.system.b[i] == 1);
    for (std::size_t j = 0; j < 9; ++j) {
      bool in_block = (i == 5) ? j < 3 : j >= 3;
      CHECK(lp.system.at(i, j) == (in_block ? 1 : 0));
    }
  }
  // column order: block then lexicographic
  CHECK(lp.column_index[0].x == parse_bits("00000"));
  CHECK(lp.column_index[1].x == parse_bits("01111"));
  CHECK(lp.column_index[2].x == parse_bits("10111"));
  CHECK(lp.column_index[3].x == parse_bits("00011"));
  CHECK(lp.column_index[8].x == parse_bits("11100"));

  // homogeneous order-2 instance: (n+2) x 8
  auto lp2 = build_lp(residue_classes(make(4, 4, {1, 1, 1, 1}, {0, 2})));
  CHECK(lp2.system.rows == 6);
  CHECK(lp2.system.cols == 8);

  // three blocks: (2n+3) rows
  auto cls3 = residue_classes(make(6, 8, {1, 1, 1, 3, 3, 3}, {0, 2, 4}));
  auto lp3 = build_lp(cls3);
  CHECK(lp3.system.rows == 2 * 6 + 3);
  CHECK(lp3.system.cols ==
        cls3[0].members.size() + cls3[1].members.size() + cls3[2].members.size());

  // empty class is a construction error
  std::vector<ResidueClass> with_empty{{0, {parse_bits("00")}}, {1, {}}};
  CHECK_THROWS_AS(build_lp(with_empty), std::invalid_argument);
}

TEST_CASE("worked example is feasible with an exact valid table") {
  auto cls = residue_classes(make(5, 7, {1, 1, 2, 2, 2}, {0, 4}));
  auto lp = build_lp(cls);
  auto result = solve_feasibility(lp);
  REQUIRE(std::holds_alternative<ProbabilityTable>(result));
  const auto& table = std::get<ProbabilityTable>(result);
  REQUIRE(table.blocks.size() == 2);
  CHECK(table.blocks[0].size() == 3);
  CHECK(table.blocks[1].size() == 6);
  CHECK(exact_ok(lp, table));
  // basic solutions keep at most rank-many nonzeros
  std::size_t nonzeros = 0;
  for (const auto& block : table.blocks)
    for (const auto& [x, v] : block) nonzeros += v != 0 ? 1 : 0;
  CHECK(nonzeros <= 7);
}

TEST_CASE("forced-marginal mismatch is infeasible") {
  // C0 = {0000} pins every marginal to 1; C2 lives on the zero-sum slice
  auto cls = residue_classes(make(4, 5, {1, 1, 1, 1}, {0, 2}));
  auto lp = build_lp(cls);
  CHECK(std::holds_alternative<Infeasible>(solve_feasibility(lp)));
}

TEST_CASE("single block needs only normalization") {
  auto cls = residue_classes(make(3, 2, {1, 1, 1}, {0}));
  auto lp = build_lp(cls);
  CHECK(lp.system.rows == 1);
  auto result = solve_feasibility(lp);
  REQUIRE(std::holds_alternative<ProbabilityTable>(result));
  CHECK(exact_ok(lp, std::get<ProbabilityTable>(result)));
}

TEST_CASE("deterministic output across repeated solves") {
  auto cls = residue_classes(make(5, 7, {1, 1, 2, 2, 2}, {0, 4}));
  auto lp = build_lp(cls);
  auto a = solve_feasibility(lp);
  auto b = solve_feasibility(lp);
  auto fa = flatten(lp, std::get<ProbabilityTable>(a));
  auto fb = flatten(lp, std::get<ProbabilityTable>(b));
  CHECK(fa == fb);
}

TEST_CASE("simplex agrees with basic-solution enumeration on small instances") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 600 && checked < 120; ++trial) {
    std::uniform_int_distribution<int> nsel(2, 4), msel(2, 6);
    int n = nsel(rng), m = msel(rng);
    std::uniform_int_distribution<int> wsel(1, m - 1), ssel(1, m - 1);
    SearchParams p = make(n, m, {}, {0, ssel(rng)});
    if (p.S[1] == 0) continue;
    p.w.resize(n);
    for (auto& wi : p.w) wi = wsel(rng);
    auto cls = residue_classes(p);
    if (cls[0].members.empty() || cls[1].members.empty()) continue;
    if (cls[0].members.size() + cls[1].members.size() > 8) continue;
    auto lp = build_lp(cls);
    bool expect = brute_feasible(lp.system);
    auto got = solve_feasibility(lp);
    CAPTURE(n);
    CAPTURE(m);
    CHECK(std::holds_alternative<ProbabilityTable>(got) == expect);
    if (std::holds_alternative<ProbabilityTable>(got))
      CHECK(exact_ok(lp, std::get<ProbabilityTable>(got)));
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("basis reconstruction returns exact values from floating input") {
  auto cls = residue_classes(make(5, 7, {1, 1, 2, 2, 2}, {0, 4}));
  auto lp = build_lp(cls);
  auto solved = std::get<ProbabilityTable>(solve_feasibility(lp));
  auto exact_flat = flatten(lp, solved);
  std::vector<double> numeric;
  for (const auto& v : exact_flat) numeric.push_back(static_cast<double>(v));

  auto rebuilt = exact_bfs_reconstruct(lp, numeric, Int(70));
  CHECK(flatten(lp, rebuilt) == exact_flat);

  // a stray tiny negative in a zero slot sorts last and stays out of the basis
  std::vector<double> noisy = numeric;
  for (auto& v : noisy)
    if (v == 0.0) v = -1e-12;
  auto rebuilt2 = exact_bfs_reconstruct(lp, noisy, Int(70));
  CHECK(exact_ok(lp, rebuilt2));

  CHECK_THROWS_AS(exact_bfs_reconstruct(lp, std::vector<double>(3, 0.0), Int(70)),
                  std::invalid_argument);
}

TEST_CASE("all-zero floating input never yields a silent wrong answer") {
  auto cls = residue_classes(make(5, 7, {1, 1, 2, 2, 2}, {0, 4}));
  auto lp = build_lp(cls);
  std::vector<double> zeros(lp.system.cols, 0.0);
  try {
    auto table = exact_bfs_reconstruct(lp, zeros, Int(70));
    CHECK(exact_ok(lp, table));  // if it returns, it must be exactly valid
  } catch (const ReconstructionError&) {
    CHECK(true);  // flagging is the other acceptable outcome
  }
}

TEST_CASE("projection reconstruction heals small perturbations") {
  auto cls = residue_classes(make(5, 7, {1, 1, 2, 2, 2}, {0, 4}));
  auto lp = build_lp(cls);
  auto solved = std::get<ProbabilityTable>(solve_feasibility(lp));
  auto exact_flat = flatten(lp, solved);
  std::vector<double> numeric;
  for (const auto& v : exact_flat) numeric.push_back(static_cast<double>(v));

  auto direct = rationalize_by_projection(lp, numeric, Int(64));
  CHECK(flatten(lp, direct) == exact_flat);

  std::vector<double> bumped = numeric;
  bumped[0] += 1e-9;
  auto healed = rationalize_by_projection(lp, bumped, Int(64));
  CHECK(flatten(lp, healed) == exact_flat);

  CHECK_THROWS_AS(rationalize_by_projection(lp, numeric, Int(0)), std::invalid_argument);
}

TEST_CASE("default denominator bound is 2mn") {
  CHECK(default_denominator_bound(7, 5) == 70);
  CHECK(default_denominator_bound(4, 4) == 32);
}
