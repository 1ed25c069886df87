#pragma once

// Reference instances with explicit probability tables, used as regression
// fixtures across the test suites. Transcribed once and machine-checked for
// residues, norms, matching marginals, union distance, and orders before
// being frozen here.

#include <map>
#include <utility>
#include <vector>

#include "ssqc/codes.hpp"
#include "ssqc/zfeas.hpp"

namespace known {

struct StateEntry {
  const char* bits;
  long num;
  long den;  // probability num/den on this string
};

struct Instance {
  int order;
  int m;
  int n;
  std::vector<int> w;
  std::vector<int> S;
  std::vector<std::vector<StateEntry>> states;
};

// Two-block rows, one per order 2..18.
const std::vector<Instance>& two_block_instances();
// Three-block rows (orders 3,4,6,8,10,12,14,15,16) and four-block rows (4,6).
const std::vector<Instance>& three_block_instances();
const std::vector<Instance>& four_block_instances();

// (|C_{S0}|, |C_{S1}|) keyed by order for the two-block rows.
const std::map<int, std::pair<int, int>>& two_block_class_sizes();

ssqc::bitspace::SearchParams params_of(const Instance& inst);
ssqc::zfeas::ProbabilityTable table_of(const Instance& inst);
ssqc::codes::LogicalCode code_of(const Instance& inst);

}  // namespace known
