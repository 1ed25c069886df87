#pragma once

// Bit strings, search parameters, and residue-class bookkeeping. Site 1 is
// the leftmost (most significant) character of the text rendering, so the
// lexicographic order on strings of equal length is the numeric order of the
// packed value.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ssqc::bitspace {

inline constexpr int kMaxSites = 24;

struct BitString {
  std::uint32_t bits = 0;
  std::uint8_t n = 0;

  bool bit(int site) const { return (bits >> (n - 1 - site)) & 1u; }  // site in [0, n)
  BitString flipped(int site) const {
    return BitString{bits ^ (1u << (n - 1 - site)), n};
  }
  auto operator<=>(const BitString&) const = default;
};

std::string render(const BitString& x);
// Throws std::invalid_argument on characters other than 0/1 or length > 24.
BitString parse_bits(const std::string& text);

int hamming(const BitString& a, const BitString& b);

// Entries (-1)^{x_i}, one per site.
std::vector<int> sign_vector(const BitString& x);

// Search-space point: modulus m, per-site weights, and the residue S[j]
// carried by logical state j (S[0] == 0). Family constructions may use
// unsorted or zero weights and repeated residues; the canonical form used by
// the sweep is the separate predicate below.
struct SearchParams {
  int n = 0;
  int m = 0;
  std::vector<int> w;  // length n, entries in [0, m)
  std::vector<int> S;  // length K >= 1, S[0] == 0, entries in [0, m)

  int K() const { return static_cast<int>(S.size()); }
};

// Throws std::invalid_argument when shapes or ranges are malformed.
void validate(const SearchParams& params);

// Sweep form: w nondecreasing with entries in [1, m-1], S strictly increasing.
bool is_canonical(const SearchParams& params);

// <w, x> mod m. Throws std::invalid_argument on length mismatch or m < 1.
int modular_inner_product(const std::vector<int>& w, const BitString& x, int m);

struct ResidueClass {
  int residue = 0;
  std::vector<BitString> members;  // lexicographic ascending
};

// All strings x with <w, x> = residue (mod m), materialized eagerly.
ResidueClass residue_class(const SearchParams& params, int residue);
// One class per S[j], in j order.
std::vector<ResidueClass> residue_classes(const SearchParams& params);

// Residues of all 2^n strings indexed by packed value; sweep fast path.
std::vector<std::uint8_t> residue_table(int n, int m, const std::vector<int>& w);

// Minimum Hamming distance between distinct strings of the union of the
// classes; nullopt when the union has fewer than two distinct strings.
std::optional<int> union_distance(const std::vector<ResidueClass>& classes);

}  // namespace ssqc::bitspace
