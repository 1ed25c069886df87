#include "ssqc/audit.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace ssqc::audit {

using bitspace::BitString;
using codes::Amplitude;
using codes::LogicalCode;
using exactnum::ExactComplex;
using exactnum::PhaseFraction;
using exactnum::Rational;

namespace {

// Residues are recomputed here on purpose; see the header note.
int residue_of(const std::vector<int>& w, BitString x, int m) {
  long long acc = 0;
  for (int i = 0; i < x.n; ++i)
    if (x.bit(i)) acc += w[i];
  return static_cast<int>(((acc % m) + m) % m);
}

void require_well_formed(const LogicalCode& code) {
  if (code.states.empty())
    throw std::invalid_argument("audit: code has no logical states");
  validate(code.params);
  if (code.states.size() != code.params.S.size())
    throw std::invalid_argument("audit: state count does not match residue labels");
  for (const auto& state : code.states)
    if (state.empty()) throw std::invalid_argument("audit: empty logical state");
}

std::complex<double> to_complex(const Amplitude& a) {
  const double mag = std::sqrt(static_cast<double>(a.radicand));
  const double ang = 2.0 * std::numbers::pi * static_cast<double>(a.phase.num) /
                     static_cast<double>(a.phase.den);
  return std::polar(mag, ang);
}

std::string render(const std::complex<double>& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::fabs(z.imag()) << "i";
  return os.str();
}

// conj(a_j) * a_k * e^{2 pi i extra}: relative phase with the bra conjugated.
ExactComplex cross_term(const Amplitude& bra, const Amplitude& ket,
                        const PhaseFraction& extra) {
  const std::int64_t den = bra.phase.den * ket.phase.den * extra.den;
  const std::int64_t num = ket.phase.num * bra.phase.den * extra.den -
                           bra.phase.num * ket.phase.den * extra.den +
                           extra.num * bra.phase.den * ket.phase.den;
  return exactnum::phased_radical(exactnum::make_phase(num, den),
                                  bra.radicand * ket.radicand);
}

std::complex<double> cross_term_f(const Amplitude& bra, const Amplitude& ket,
                                  const PhaseFraction& extra) {
  const double ang = 2.0 * std::numbers::pi * static_cast<double>(extra.num) /
                     static_cast<double>(extra.den);
  return std::conj(to_complex(bra)) * to_complex(ket) * std::polar(1.0, ang);
}

constexpr PhaseFraction kOne{0, 1};
constexpr PhaseFraction kMinusOne{1, 2};
constexpr PhaseFraction kImag{1, 4};
constexpr PhaseFraction kMinusImag{3, 4};

// Exact and floating matrix elements of one weight-1 operator between states
// j and k. X and Y couple x to x ^ e_i; Z is diagonal in x.
struct Element {
  ExactComplex exact;
  std::complex<double> approx;
  bool structurally_empty = true;
};

Element matrix_element(const LogicalCode& code, Pauli op, int site, int j, int k,
                       Mode mode) {
  Element el;
  const auto& bra_state = code.states[j];
  const auto& ket_state = code.states[k];
  if (op == Pauli::kZ) {
    el.structurally_empty = false;  // diagonal sums are never vacuous here
    for (const auto& [x, ket] : ket_state) {
      auto it = bra_state.find(x);
      if (it == bra_state.end()) continue;
      const PhaseFraction sign = x.bit(site) ? kMinusOne : kOne;
      if (mode == Mode::kRational)
        el.exact += cross_term(it->second, ket, sign);
      else
        el.approx += cross_term_f(it->second, ket, sign);
    }
    return el;
  }
  for (const auto& [x, ket] : ket_state) {
    auto it = bra_state.find(x.flipped(site));
    if (it == bra_state.end()) continue;
    el.structurally_empty = false;
    PhaseFraction extra = kOne;
    if (op == Pauli::kY) extra = x.bit(site) ? kMinusImag : kImag;  // i(-1)^{x_i}
    if (mode == Mode::kRational)
      el.exact += cross_term(it->second, ket, extra);
    else
      el.approx += cross_term_f(it->second, ket, extra);
  }
  return el;
}

bool near_zero(const std::complex<double>& z, double tau) { return std::abs(z) <= tau; }

bool near_equal(const std::complex<double>& a, const std::complex<double>& b,
                double tau) {
  return std::abs(a - b) <= tau;
}

}  // namespace

AuditReport kl_check(const LogicalCode& code, const AuditConfig& config) {
  require_well_formed(code);
  const int n = code.params.n;
  const int K = code.K();
  AuditReport report;
  report.kl_pass = true;

  for (Pauli op : {Pauli::kX, Pauli::kY, Pauli::kZ}) {
    std::vector<std::string>& lambda = op == Pauli::kX   ? report.lambda_x
                                       : op == Pauli::kY ? report.lambda_y
                                                         : report.lambda_z;
    bool axis_diagonals_ok = true;
    std::vector<std::string> axis_lambda;
    for (int site = 0; site < n; ++site) {
      Element ref;  // state 0 diagonal, the common value candidate
      for (int j = 0; j < K; ++j) {
        for (int k = j; k < K; ++k) {
          Element el = matrix_element(code, op, site, j, k, config.mode);
          CheckEntry entry;
          entry.mode = config.mode;
          entry.op = op;
          entry.site = site;
          entry.j = j;
          entry.k = k;
          entry.structurally_empty =
              op != Pauli::kZ && el.structurally_empty;
          if (config.mode == Mode::kRational)
            entry.measured = el.exact.to_string();
          else
            entry.measured = render(el.approx);
          if (j == 0 && k == 0) {
            ref = el;
            entry.pass = true;  // reference value, recorded not compared
          } else if (j == k) {
            entry.pass = config.mode == Mode::kRational
                             ? el.exact == ref.exact
                             : near_equal(el.approx, ref.approx, config.tau_float);
          } else {
            entry.pass = config.mode == Mode::kRational
                             ? el.exact.is_zero()
                             : near_zero(el.approx, config.tau_float);
          }
          if (!entry.pass) report.kl_pass = false;
          if (j == k && !entry.pass) axis_diagonals_ok = false;
          report.checks.push_back(std::move(entry));
          if (j == 0 && k == 0)
            axis_lambda.push_back(config.mode == Mode::kRational
                                      ? ref.exact.to_string()
                                      : render(ref.approx));
        }
      }
    }
    if (axis_diagonals_ok) lambda = std::move(axis_lambda);
  }
  report.overall = report.kl_pass;
  return report;
}

std::vector<TransversalEntry> transversal_check(const LogicalCode& code,
                                                const AuditConfig& config) {
  require_well_formed(code);
  const auto& params = code.params;
  std::vector<TransversalEntry> entries;
  for (int j = 0; j < code.K(); ++j) {
    TransversalEntry entry;
    entry.j = j;
    entry.pass = true;
    if (config.mode == Mode::kRational) {
      for (const auto& [x, amp] : code.states[j]) {
        if (residue_of(params.w, x, params.m) != params.S[j]) {
          entry.pass = false;
          entry.detail = "support string " + bitspace::render(x) +
                         " has residue " +
                         std::to_string(residue_of(params.w, x, params.m)) +
                         ", expected " + std::to_string(params.S[j]);
          break;
        }
      }
      if (entry.pass) entry.detail = "all residues match";
    } else {
      // || U |j> - w^{S_j} |j> ||^2 with U the site-wise rotation: each
      // support string x contributes |a|^2 |w^{res(x)} - w^{S_j}|^2.
      double norm2 = 0.0;
      for (const auto& [x, amp] : code.states[j]) {
        const double tw = 2.0 * std::numbers::pi / params.m;
        const std::complex<double> diff =
            std::polar(1.0, tw * residue_of(params.w, x, params.m)) -
            std::polar(1.0, tw * params.S[j]);
        norm2 += static_cast<double>(amp.radicand) * std::norm(diff);
      }
      entry.pass = norm2 <= config.tau_float;
      std::ostringstream os;
      os.precision(17);
      os << "deviation norm^2 = " << norm2;
      entry.detail = os.str();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

AuditReport full_audit(const LogicalCode& code, const AuditConfig& config) {
  require_well_formed(code);
  AuditConfig float_cfg = config;
  float_cfg.mode = Mode::kFloat;
  AuditConfig exact_cfg = config;
  exact_cfg.mode = Mode::kRational;

  AuditReport floats = kl_check(code, float_cfg);
  AuditReport exact = kl_check(code, exact_cfg);

  AuditReport report;
  report.checks = std::move(floats.checks);
  report.checks.insert(report.checks.end(), exact.checks.begin(), exact.checks.end());
  report.lambda_x = std::move(exact.lambda_x);
  report.lambda_y = std::move(exact.lambda_y);
  report.lambda_z = std::move(exact.lambda_z);
  report.kl_pass = floats.kl_pass && exact.kl_pass;
  report.transversal = transversal_check(code, exact_cfg);
  report.transversal_pass = true;
  for (const auto& entry : report.transversal)
    if (!entry.pass) report.transversal_pass = false;
  report.overall = report.kl_pass && report.transversal_pass;
  return report;
}

}  // namespace ssqc::audit
