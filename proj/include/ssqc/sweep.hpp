#pragma once

// The search driver: canonical enumeration of (m, w, S) tuples, screening,
// exact feasibility, assembly, audit, and a deterministic hit list.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssqc/bitspace.hpp"
#include "ssqc/codes.hpp"
#include "ssqc/exactnum.hpp"
#include "ssqc/zfeas.hpp"

namespace ssqc::sweep {

struct SweepConfig {
  int n = 0;
  int K = 0;
  int m_min = 0;  // inclusive range
  int m_max = 0;
  bool coprime_filter = false;          // keep only gcd(m, S_1..S_{K-1}) == 1
  bool require_exact_distance_2 = true; // false accepts any union distance >= 2
  // Certificate-size cap: a feasible table whose reduced denominators exceed
  // the bound is flagged instead of recorded. Unset = no cap.
  std::optional<std::int64_t> denominator_bound;
  int parallelism = 1;
};

// Throws std::invalid_argument on bad ranges.
void validate(const SweepConfig& config);

// Identity strings shared with the catalog: the literal parameter key, and
// the least key over unit scalings u -> (sorted uw mod m, sorted uS mod m).
std::string dedup_key_of(const bitspace::SearchParams& params);
std::string scaling_class_of(const bitspace::SearchParams& params);

struct HitRecord {
  bitspace::SearchParams params;
  std::vector<int> class_sizes;            // |C_{S_j}| in j order
  zfeas::ProbabilityTable probabilities;   // the deterministic vertex table
  std::vector<exactnum::Rational> z_expectations;  // per site, common to all states
  int order = 0;
  bool audit_ok = false;
  std::string dedup_key;      // "n=.. K=.. m=.. w=.. S=.."
  std::string scaling_class;  // least key over unit scalings (w,S) -> (uw, uS)
};

// A candidate that reached the pipeline but could not be recorded; kept so
// nothing is dropped silently.
struct FlaggedRecord {
  bitspace::SearchParams params;
  std::string reason;
};

struct SweepResult {
  std::vector<HitRecord> hits;        // sorted by (order, m, w, S)
  std::vector<FlaggedRecord> flagged; // sorted by (m, w, S)
  // Funnel counters.
  std::int64_t w_vectors = 0;
  std::int64_t tuples = 0;       // S choices examined
  std::int64_t screen_passed = 0;
  std::int64_t classes_ok = 0;   // screen passed and every class non-empty
  std::int64_t distance_ok = 0;
  std::int64_t feasible = 0;
};

// Canonical candidates (w nondecreasing in [1,m-1]^n, S strictly increasing
// from 0) that pass the shift screen and the optional coprime filter, in
// lexicographic (m, w, S) order.
void for_each_candidate(const SweepConfig& config,
                        const std::function<void(const bitspace::SearchParams&)>& sink);
// Materialized convenience wrapper; intended for small configs and tests.
std::vector<bitspace::SearchParams> enumerate_candidates(const SweepConfig& config);

// One candidate through the whole pipeline. Outcomes: HitRecord (recorded),
// FlaggedRecord (reached but not recordable), or nullopt-like skip (empty
// class, wrong distance, infeasible).
struct PipelineOutcome {
  std::optional<HitRecord> hit;
  std::optional<FlaggedRecord> flag;
  bool classes_ok = false;
  bool distance_ok = false;
  bool feasible = false;
};
PipelineOutcome process_candidate(const bitspace::SearchParams& params,
                                  const SweepConfig& config);

SweepResult run_sweep(const SweepConfig& config);

// Max order per (n, K) over the hit list.
std::map<std::pair<int, int>, int> max_order_summary(const std::vector<HitRecord>& hits);

}  // namespace ssqc::sweep
