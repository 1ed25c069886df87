#include "ssqc/families.hpp"

#include <cstdint>
#include <stdexcept>

#include "ssqc/screens.hpp"

namespace ssqc::families {

using bitspace::BitString;
using exactnum::Rational;

namespace {

long long binomial(int n, int k) {
  long long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Masks over `width` bits with the given popcount, ascending (Gosper's hack).
std::vector<std::uint32_t> popcount_masks(int width, int count) {
  std::vector<std::uint32_t> out;
  if (count == 0) return {0u};
  if (count > width) return out;
  std::uint32_t v = (1u << count) - 1;
  const std::uint32_t limit = 1u << width;
  while (v < limit) {
    out.push_back(v);
    const std::uint32_t c = v & -v;
    const std::uint32_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

}  // namespace

ExtremaCode build_extrema_code(const ExtremaFamilySpec& spec) {
  const int n = spec.n, m = spec.m, s = spec.s;
  if (n < 2 || n > bitspace::kMaxSites)
    throw std::invalid_argument("extrema family: n must be in [2, 24]");
  if (m < n)
    throw std::invalid_argument(
        "extrema family: m < n leaves more than the two extremal strings in "
        "class 0");
  if (s < m - (n - 1) || s > n - 1)
    throw std::invalid_argument(
        "extrema family: s outside the two-slice window [m-(n-1), n-1]");

  bitspace::SearchParams params;
  params.n = n;
  params.m = m;
  params.w.assign(n - 1, 1);
  params.w.push_back(m - (n - 1));
  params.S = {0, s};

  const int t = n - 1 + s - m;
  zfeas::ProbabilityTable table;
  table.blocks.resize(2);
  table.blocks[0] = {{BitString{0u, static_cast<std::uint8_t>(n)}, Rational(m - s, m)},
                     {BitString{(1u << n) - 1, static_cast<std::uint8_t>(n)},
                      Rational(s, m)}};
  // Last site is the low word bit, so "last bit zero" slices shift left once.
  for (std::uint32_t y : popcount_masks(n - 1, s))
    table.blocks[1].emplace(BitString{y << 1, static_cast<std::uint8_t>(n)},
                            Rational(m - s, m * binomial(n - 1, s)));
  for (std::uint32_t y : popcount_masks(n - 1, t))
    table.blocks[1].emplace(BitString{(y << 1) | 1u, static_cast<std::uint8_t>(n)},
                            Rational(s, m * binomial(n - 1, t)));

  ExtremaCode out;
  out.code = codes::assemble(params, table);
  out.t = t;
  if (auto failure = screens::shift_screen(params)) {
    out.screen_ok = false;
    out.screen_note = "shift screen violated at site " +
                      std::to_string(failure->site) +
                      " (sufficient, not necessary: run the distance check)";
  }
  return out;
}

codes::LogicalCode build_even_parity_code(const EvenParityFamilySpec& spec) {
  bitspace::SearchParams params;
  params.n = spec.n;
  params.m = spec.m;
  params.w = spec.w;
  params.S = spec.S;
  validate(params);
  if (spec.n % 2 != 0)
    throw std::invalid_argument("even-parity family: n must be even");
  if (spec.m < 3) throw std::invalid_argument("even-parity family: m must be >= 3");
  for (std::size_t j = 0; j < spec.S.size(); ++j)
    for (std::size_t k = j + 1; k < spec.S.size(); ++k)
      if (spec.S[j] == spec.S[k])
        throw std::invalid_argument("even-parity family: residues must be distinct");

  const auto residues = bitspace::residue_table(spec.n, spec.m, spec.w);
  const int K = params.K();
  std::vector<std::vector<BitString>> classes(K);
  for (std::uint32_t v = 0; v < (1u << spec.n); ++v) {
    if (__builtin_popcount(v) % 2 != 0) continue;
    for (int k = 0; k < K; ++k)
      if (residues[v] == spec.S[k])
        classes[k].push_back(BitString{v, static_cast<std::uint8_t>(spec.n)});
  }

  zfeas::ProbabilityTable table;
  table.blocks.resize(K);
  for (int k = 0; k < K; ++k) {
    const auto& cls = classes[k];
    if (cls.empty())
      throw std::invalid_argument(
          "even-parity family: class " + std::to_string(k) + " (residue " +
          std::to_string(spec.S[k]) + ") is empty");
    for (int site = 0; site < spec.n; ++site) {
      int ones = 0;
      for (const auto& x : cls) ones += x.bit(site);
      if (2 * ones != static_cast<int>(cls.size()))
        throw std::invalid_argument(
            "even-parity family: site " + std::to_string(site) + " of class " +
            std::to_string(k) + " (residue " + std::to_string(spec.S[k]) +
            ") has " + std::to_string(ones) + " ones across " +
            std::to_string(cls.size()) + " strings; exact column balance fails");
    }
    const Rational p(1, static_cast<long long>(cls.size()));
    for (const auto& x : cls) table.blocks[k].emplace(x, p);
  }
  return codes::assemble(params, table);
}

codes::LogicalCode build_642_code() {
  codes::LogicalCode code;
  code.params.n = 6;
  code.params.m = 4;
  code.params.w = {1, 3, 2, 2, 2, 2};
  code.params.S = {0, 0, 0, 1};
  code.states.resize(4);
  const Rational p(1, 16);
  const auto plus = exactnum::make_phase(0, 1);
  const auto minus = exactnum::make_phase(1, 2);
  for (std::uint32_t t = 0; t < 8; ++t) {
    const int t0 = (t >> 2) & 1, t1 = (t >> 1) & 1, t2 = t & 1;
    // phi(t) appends the parity bit; psi(t) flips it.
    const std::uint32_t phi = (t << 1) | static_cast<std::uint32_t>(t0 ^ t1 ^ t2);
    const std::uint32_t psi = phi ^ 1u;
    const BitString zz{phi, 6}, oo{(3u << 4) | phi, 6};
    const exactnum::PhaseFraction sign[3] = {plus, (t0 ^ t1) ? minus : plus,
                                             (t0 ^ t2) ? minus : plus};
    for (int j = 0; j < 3; ++j) {
      code.states[j][zz] = {sign[j], p};
      code.states[j][oo] = {sign[j], p};
    }
    const auto s3 = t2 ? minus : plus;
    code.states[3][BitString{(2u << 4) | phi, 6}] = {s3, p};
    code.states[3][BitString{(1u << 4) | psi, 6}] = {s3, p};
  }
  return code;
}

}  // namespace ssqc::families
