#pragma once

// Exact arithmetic kernel: arbitrary-precision rationals, best rational
// approximation by continued fractions, fraction-free linear solving, and
// sums of square roots of rationals with an exact zero test.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ssqc::exactnum {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Renders as "num/den" in lowest terms with positive denominator ("0/1", "-1/2").
std::string to_string(const Rational& r);

// Accepts "num/den" or a bare integer. Throws std::invalid_argument on junk,
// overflow-free; "3/0" is rejected.
Rational parse_rational(const std::string& text);

// The exact binary value of the double (no decimal re-interpretation).
// Throws std::invalid_argument for NaN/infinity.
Rational rational_from_double(double v);

// Best rational approximation of v with denominator <= max_den (>= 1), via
// continued-fraction convergents and intermediate fractions. Exact midpoint
// ties resolve toward the smaller denominator, then the smaller numerator.
Rational cf_round(double v, const Int& max_den);
Rational cf_round(const Rational& v, const Int& max_den);

// Dense integer linear system A x = b, row-major.
struct LinearSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> a;  // rows * cols entries
  std::vector<Int> b;  // rows entries

  LinearSystem() = default;
  LinearSystem(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c), b(r) {}
  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class SolveStatus { kUnique, kUnderdetermined, kInconsistent };

struct SolveResult {
  SolveStatus status = SolveStatus::kInconsistent;
  // Particular solution with free variables set to 0; empty when inconsistent.
  std::vector<Rational> solution;
  std::size_t nullspace_rank = 0;
};

// Fraction-free (Bareiss) elimination over the integers, then rational back
// substitution. Classifies the system and returns a particular solution.
SolveResult solve_exact(const LinearSystem& sys);

// Same elimination with a rational right-hand side (scaled to integers first).
SolveResult solve_exact_with_rhs(const LinearSystem& sys,
                                 const std::vector<Rational>& rhs);

// Sum of terms q * sqrt(r) over distinct square-free positive integer
// radicands r. The term map is canonical, so the sum is zero iff it is empty:
// square roots of distinct square-free integers are linearly independent
// over the rationals.
class RadicalSum {
 public:
  RadicalSum() = default;
  static RadicalSum of_rational(const Rational& q);

  // Adds q * sqrt(r), r >= 0. Rationalizes and pulls square factors into the
  // coefficient so every stored radicand is a square-free positive integer;
  // rationally dependent radicands therefore share one map key.
  void add_term(const Rational& coeff, const Rational& radicand);

  bool is_zero() const { return terms_.empty(); }
  // True when the value lies in Q (empty sum or a single radicand-1 term).
  bool is_rational() const;
  Rational rational_value() const;  // throws std::logic_error if !is_rational()

  RadicalSum& operator+=(const RadicalSum& other);
  RadicalSum& operator-=(const RadicalSum& other);
  RadicalSum operator-() const;
  RadicalSum operator*(const RadicalSum& other) const;
  bool operator==(const RadicalSum& other) const { return terms_ == other.terms_; }

  double to_double() const;
  std::string to_string() const;  // e.g. "1/2 + -3/7*sqrt(10)"; "0" when empty

  const std::map<Rational, Rational>& terms() const { return terms_; }

 private:
  std::map<Rational, Rational> terms_;  // radicand -> coefficient
};

// Exact inner-product sum over two term lists: sum_ij c_i d_j sqrt(r_i s_j).
// Terms are (coefficient, radicand) pairs with nonnegative radicands.
RadicalSum radical_inner(const std::vector<std::pair<Rational, Rational>>& terms_a,
                         const std::vector<std::pair<Rational, Rational>>& terms_b);

// Root-of-unity phase e^{2*pi*i*num/den}, stored reduced with 0 <= num < den.
struct PhaseFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool operator==(const PhaseFraction&) const = default;
};
PhaseFraction make_phase(std::int64_t num, std::int64_t den);  // reduces mod 1
std::string to_string(const PhaseFraction& p);                 // "num/den"
PhaseFraction parse_phase(const std::string& text);

// Exact complex value re + i*im with RadicalSum parts.
struct ExactComplex {
  RadicalSum re;
  RadicalSum im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex operator*(const ExactComplex& o) const;
  ExactComplex conj() const;
  bool operator==(const ExactComplex&) const = default;
  std::string to_string() const;
};

// e^{2*pi*i*phase} * sqrt(radicand) as an ExactComplex. Exact only for phase
// denominators 1, 2, and 4 (values +-1, +-i); anything else throws
// std::domain_error rather than approximating.
ExactComplex phased_radical(const PhaseFraction& phase, const Rational& radicand);

}  // namespace ssqc::exactnum
