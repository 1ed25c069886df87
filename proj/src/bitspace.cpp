#include "ssqc/bitspace.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ssqc::bitspace {

std::string render(const BitString& x) {
  std::string out(x.n, '0');
  for (int i = 0; i < x.n; ++i)
    if (x.bit(i)) out[i] = '1';
  return out;
}

BitString parse_bits(const std::string& text) {
  if (text.empty() || text.size() > kMaxSites)
    throw std::invalid_argument("bit string length must be in [1, 24]: '" + text + "'");
  BitString x{0, static_cast<std::uint8_t>(text.size())};
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("bit string has non-binary character: '" + text + "'");
    x.bits = (x.bits << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return x;
}

int hamming(const BitString& a, const BitString& b) {
  if (a.n != b.n) throw std::invalid_argument("hamming: length mismatch");
  return std::popcount(a.bits ^ b.bits);
}

std::vector<int> sign_vector(const BitString& x) {
  std::vector<int> v(x.n);
  for (int i = 0; i < x.n; ++i) v[i] = x.bit(i) ? -1 : 1;
  return v;
}

void validate(const SearchParams& params) {
  if (params.n < 1 || params.n > kMaxSites)
    throw std::invalid_argument("n must be in [1, 24]");
  if (params.m < 2) throw std::invalid_argument("modulus must be >= 2");
  if (static_cast<int>(params.w.size()) != params.n)
    throw std::invalid_argument("weight vector length must equal n");
  for (int wi : params.w)
    if (wi < 0 || wi >= params.m)
      throw std::invalid_argument("weights must lie in [0, m-1]");
  if (params.S.empty() || params.S[0] != 0)
    throw std::invalid_argument("residue list must start with 0");
  for (int s : params.S)
    if (s < 0 || s >= params.m)
      throw std::invalid_argument("residues must lie in [0, m-1]");
}

bool is_canonical(const SearchParams& params) {
  validate(params);
  for (int i = 0; i < params.n; ++i) {
    if (params.w[i] < 1) return false;
    if (i > 0 && params.w[i] < params.w[i - 1]) return false;
  }
  for (std::size_t j = 1; j < params.S.size(); ++j)
    if (params.S[j] <= params.S[j - 1]) return false;
  return true;
}

int modular_inner_product(const std::vector<int>& w, const BitString& x, int m) {
  if (static_cast<int>(w.size()) != x.n)
    throw std::invalid_argument("modular_inner_product: dimension mismatch");
  if (m < 1) throw std::invalid_argument("modular_inner_product: modulus must be >= 1");
  long acc = 0;
  for (int i = 0; i < x.n; ++i)
    if (x.bit(i)) acc += w[i];
  return static_cast<int>(acc % m);
}

std::vector<std::uint8_t> residue_table(int n, int m, const std::vector<int>& w) {
  if (n < 1 || n > 20) throw std::invalid_argument("residue_table: n must be in [1, 20]");
  if (m < 2 || m > 255) throw std::invalid_argument("residue_table: m must be in [2, 255]");
  if (static_cast<int>(w.size()) != n) throw std::invalid_argument("residue_table: bad w length");
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  table[0] = 0;
  for (std::uint32_t x = 1; x < table.size(); ++x) {
    std::uint32_t low = x & (x - 1);          // x with its lowest set bit cleared
    int site = n - 1 - std::countr_zero(x);   // site index of that bit
    table[x] = static_cast<std::uint8_t>((table[low] + w[site]) % m);
  }
  return table;
}

ResidueClass residue_class(const SearchParams& params, int residue) {
  validate(params);
  if (residue < 0 || residue >= params.m)
    throw std::invalid_argument("residue_class: residue out of range");
  ResidueClass cls;
  cls.residue = residue;
  const std::uint32_t count = 1u << params.n;
  for (std::uint32_t v = 0; v < count; ++v) {
    BitString x{v, static_cast<std::uint8_t>(params.n)};
    if (modular_inner_product(params.w, x, params.m) == residue) cls.members.push_back(x);
  }
  return cls;
}

std::vector<ResidueClass> residue_classes(const SearchParams& params) {
  std::vector<ResidueClass> out;
  out.reserve(params.S.size());
  for (int s : params.S) out.push_back(residue_class(params, s));
  return out;
}

std::optional<int> union_distance(const std::vector<ResidueClass>& classes) {
  std::vector<BitString> all;
  for (const auto& c : classes) all.insert(all.end(), c.members.begin(), c.members.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() < 2) return std::nullopt;
  int best = all[0].n;
  for (std::size_t i = 0; i < all.size() && best > 1; ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      int d = std::popcount(all[i].bits ^ all[j].bits);
      if (d < best) {
        best = d;
        if (best == 1) break;
      }
    }
  return best;
}

}  // namespace ssqc::bitspace
