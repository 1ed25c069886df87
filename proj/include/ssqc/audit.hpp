#pragma once

// Independent verification of a finished code: weight-1 error checks for
// every site and Pauli axis plus the eigenoperator check, in floating and
// exact arithmetic. Deliberately built against the code model alone -- this
// translation unit recomputes residues and neighbor structure itself and
// shares no constraint-building code with the solver side.

#include <string>
#include <vector>

#include "ssqc/codes.hpp"

namespace ssqc::audit {

enum class Mode { kFloat, kRational };

struct AuditConfig {
  double tau_float = 1e-10;  // float-mode tolerance
  Mode mode = Mode::kRational;  // rational mode compares with tolerance exactly 0
};

enum class Pauli { kX, kY, kZ };

// One verified matrix element: off-diagonal (j < k) must vanish; a diagonal
// entry (j == k > 0) must equal state 0's diagonal. j == k == 0 records the
// reference value itself and always passes.
struct CheckEntry {
  Mode mode = Mode::kRational;
  Pauli op = Pauli::kX;
  int site = 0;
  int j = 0;
  int k = 0;
  bool pass = false;
  // X/Y only: no Hamming-1 support overlap contributed any term, so the
  // element vanishes structurally rather than by cancellation.
  bool structurally_empty = false;
  std::string measured;
};

struct TransversalEntry {
  int j = 0;
  bool pass = false;
  std::string detail;
};

struct AuditReport {
  std::vector<CheckEntry> checks;
  // Common diagonals per site, rendered, filled when every diagonal check of
  // that axis passes.
  std::vector<std::string> lambda_x, lambda_y, lambda_z;
  std::vector<TransversalEntry> transversal;
  bool kl_pass = false;
  bool transversal_pass = false;
  bool overall = false;
};

// Weight-1 checks in the configured arithmetic. Throws std::invalid_argument
// on a malformed code (no states, or states/params shape mismatch).
AuditReport kl_check(const codes::LogicalCode& code, const AuditConfig& config);

// Rational mode: exact residue check per support string. Float mode: norm of
// the phase-rotated state minus its eigenvalue times the state, against
// tau_float.
std::vector<TransversalEntry> transversal_check(const codes::LogicalCode& code,
                                                const AuditConfig& config);

// Float kl_check + rational kl_check + rational transversal_check; accepts
// only when all three pass. Lambdas are taken from the exact pass.
AuditReport full_audit(const codes::LogicalCode& code, const AuditConfig& config = {});

}  // namespace ssqc::audit
