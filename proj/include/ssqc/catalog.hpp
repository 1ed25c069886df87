#pragma once

// Line-oriented persistence: one JSON object per line with a fixed key order,
// exact rationals only ("num/den" strings), amplitudes as {phase, radicand}.
// Files written here are diff-stable byte for byte.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssqc/bitspace.hpp"
#include "ssqc/codes.hpp"
#include "ssqc/exactnum.hpp"
#include "ssqc/sweep.hpp"
#include "ssqc/zfeas.hpp"

namespace ssqc::catalog {

inline constexpr int kSchemaVersion = 1;

// One catalog line. kind selects the payload slot: "hit" fills probabilities,
// "code" fills amplitudes, "flagged" fills only note (the reason).
struct CatalogRecord {
  int schema_version = kSchemaVersion;
  std::string kind;  // "hit" | "code" | "flagged"
  bitspace::SearchParams params;
  std::vector<int> classes;  // per-block class/support sizes
  zfeas::ProbabilityTable probabilities;
  std::vector<std::map<bitspace::BitString, codes::Amplitude>> amplitudes;
  std::vector<exactnum::Rational> z_expectations;  // per site
  int order = 0;  // 0 on "flagged"
  bool audit_ok = false;
  std::string note;  // flag reason; empty otherwise
};
bool operator==(const CatalogRecord& a, const CatalogRecord& b);
inline bool operator!=(const CatalogRecord& a, const CatalogRecord& b) { return !(a == b); }

CatalogRecord from_hit(const sweep::HitRecord& hit);
// Throws codes::EigenoperatorViolation if the code's supports stray from
// their residue classes (the order would be meaningless).
CatalogRecord from_code(const codes::LogicalCode& code, bool audit_ok);
CatalogRecord from_flag(const sweep::FlaggedRecord& flag);

// Rebuild the logical code a record certifies; nullopt for "flagged".
// Propagates assembly errors for structurally bad "hit" payloads.
std::optional<codes::LogicalCode> realize(const CatalogRecord& record);

std::string render_record(const CatalogRecord& record);  // one line, no newline
// Strict: unexpected layout, non-canonical rationals, or kind/payload
// mismatches all throw std::runtime_error.
CatalogRecord parse_record(const std::string& line);

// One record per line; throws std::runtime_error naming the failing record
// index on I/O trouble. Returns the count written.
std::size_t write_catalog(const std::vector<CatalogRecord>& records, std::ostream& out);
std::size_t write_catalog(const std::vector<CatalogRecord>& records, const std::string& path);

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

struct ReadResult {
  std::vector<CatalogRecord> records;
  std::vector<std::string> warnings;  // duplicate dedup keys
};
ReadResult read_catalog(std::istream& in);    // throws ParseError
ReadResult read_catalog(const std::string& path);

}  // namespace ssqc::catalog
