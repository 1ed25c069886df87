#include "ssqc/codes.hpp"

#include <numeric>

namespace ssqc::codes {

using bitspace::BitString;
using bitspace::SearchParams;
using exactnum::ExactComplex;
using exactnum::PhaseFraction;
using exactnum::Rational;

LogicalCode assemble(const SearchParams& params, const zfeas::ProbabilityTable& probs) {
  validate(params);
  if (static_cast<int>(probs.blocks.size()) != params.K())
    throw std::invalid_argument("assemble: block count does not match K");
  LogicalCode code;
  code.params = params;
  code.states.resize(probs.blocks.size());
  for (std::size_t j = 0; j < probs.blocks.size(); ++j) {
    for (const auto& [x, p] : probs.blocks[j]) {
      if (p < 0) throw std::invalid_argument("assemble: negative probability");
      if (p == 0) continue;
      code.states[j].emplace(x, Amplitude{PhaseFraction{0, 1}, p});
    }
  }
  return code;
}

TransversalAction transversal_action(const LogicalCode& code) {
  const auto& params = code.params;
  TransversalAction action;
  for (int j = 0; j < code.K(); ++j) {
    for (const auto& [x, amp] : code.states[j]) {
      if (bitspace::modular_inner_product(params.w, x, params.m) != params.S[j])
        throw EigenoperatorViolation(j, x);
    }
    action.eigen_residues.push_back(params.S[j]);
    action.gate.push_back(exactnum::make_phase(params.S[j], params.m));
  }
  int g = params.m;
  for (int j = 1; j < code.K(); ++j) g = std::gcd(g, params.S[j]);
  action.order = params.m / g;
  return action;
}

std::vector<std::vector<Rational>> z_expectations(const LogicalCode& code) {
  std::vector<std::vector<Rational>> out;
  out.reserve(code.states.size());
  for (const auto& state : code.states) {
    std::vector<Rational> z(code.params.n, Rational(0));
    for (const auto& [x, amp] : state)
      for (int i = 0; i < code.params.n; ++i)
        z[i] += (x.bit(i) ? Rational(-1) : Rational(1)) * amp.radicand;
    out.push_back(std::move(z));
  }
  return out;
}

ExactComplex state_inner_product(const LogicalCode& code, int j, int k) {
  if (j < 0 || k < 0 || j >= code.K() || k >= code.K())
    throw std::out_of_range("state_inner_product: state index");
  ExactComplex acc;
  for (const auto& [x, aj] : code.states[j]) {
    auto it = code.states[k].find(x);
    if (it == code.states[k].end()) continue;
    const Amplitude& ak = it->second;
    // conj(a_j) * a_k = e^{2 pi i (phase_k - phase_j)} sqrt(r_j r_k)
    PhaseFraction rel = exactnum::make_phase(
        ak.phase.num * aj.phase.den - aj.phase.num * ak.phase.den,
        aj.phase.den * ak.phase.den);
    acc += exactnum::phased_radical(rel, aj.radicand * ak.radicand);
  }
  return acc;
}

Rational state_norm_squared(const LogicalCode& code, int j) {
  if (j < 0 || j >= code.K()) throw std::out_of_range("state_norm_squared: state index");
  Rational acc(0);
  for (const auto& [x, amp] : code.states[j]) acc += amp.radicand;
  return acc;
}

}  // namespace ssqc::codes
