#include "ssqc/exactnum.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ssqc::exactnum {

namespace {

Int gcd_int(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r) << "/" << denominator(r);
  return os.str();
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { throw std::invalid_argument("not a rational: '" + text + "'"); };
  if (text.empty()) bad();
  std::string num_part = text, den_part = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num_part = text.substr(0, slash);
    den_part = text.substr(slash + 1);
  }
  auto parse_int = [&](const std::string& s) -> Int {
    if (s.empty()) bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) bad();
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') bad();
    return Int(s);
  };
  Int num = parse_int(num_part);
  Int den = parse_int(den_part);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(num, den);
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("rational_from_double: value not finite");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  double fr = std::frexp(v, &exp);  // v = fr * 2^exp with |fr| in [0.5, 1)
  auto mant = static_cast<std::int64_t>(std::ldexp(fr, 53));  // exact: 53-bit significand
  int shift = 53 - exp;
  Rational r(mant);
  if (shift > 0) r /= Rational(Int(1) << shift);
  if (shift < 0) r *= Rational(Int(1) << -shift);
  return r;
}

Rational cf_round(double v, const Int& max_den) {
  return cf_round(rational_from_double(v), max_den);
}

Rational cf_round(const Rational& v, const Int& max_den) {
  if (max_den < 1) throw std::invalid_argument("cf_round: denominator bound must be >= 1");
  if (denominator(v) <= max_den) return v;

  const bool neg = v < 0;
  Int p = numerator(v);
  if (neg) p = -p;
  Int q = denominator(v);
  const Rational x(p, q);

  // Continued-fraction walk; stops at the first convergent denominator > max_den.
  Int hm2 = 0, hm1 = 1;  // numerators h_{-2}, h_{-1}
  Int km2 = 1, km1 = 0;  // denominators k_{-2}, k_{-1}
  Int pp = p, qq = q;
  for (;;) {
    Int a = pp / qq;
    Int h = a * hm1 + hm2;
    Int k = a * km1 + km2;
    if (k > max_den) {
      // Candidates: the last convergent in range and the deepest intermediate
      // fraction on the h/k side whose denominator still fits.
      Int t = (max_den - km2) / km1;
      Rational c1(hm1, km1);
      Rational c2(hm2 + t * hm1, km2 + t * km1);
      auto dist = [&](const Rational& c) {
        Rational d = x - c;
        return d < 0 ? Rational(-d) : d;
      };
      Rational d1 = dist(c1), d2 = dist(c2);
      Rational best;
      if (d1 != d2) {
        best = d1 < d2 ? c1 : c2;
      } else if (denominator(c1) != denominator(c2)) {
        best = denominator(c1) < denominator(c2) ? c1 : c2;
      } else {
        Rational s1 = neg ? Rational(-c1) : c1, s2 = neg ? Rational(-c2) : c2;
        return numerator(s1) < numerator(s2) ? s1 : s2;
      }
      return neg ? Rational(-best) : best;
    }
    Int r = pp - a * qq;
    hm2 = hm1;
    hm1 = h;
    km2 = km1;
    km1 = k;
    if (r == 0) return neg ? Rational(-Rational(h, k)) : Rational(h, k);
    pp = qq;
    qq = r;
  }
}

SolveResult solve_exact(const LinearSystem& sys) {
  std::vector<Rational> rhs(sys.b.size());
  for (std::size_t i = 0; i < sys.b.size(); ++i) rhs[i] = Rational(sys.b[i]);
  return solve_exact_with_rhs(sys, rhs);
}

SolveResult solve_exact_with_rhs(const LinearSystem& sys, const std::vector<Rational>& rhs) {
  if (rhs.size() != sys.rows) throw std::invalid_argument("solve_exact: rhs length mismatch");
  if (sys.a.size() != sys.rows * sys.cols) throw std::invalid_argument("solve_exact: bad matrix shape");

  const std::size_t rows = sys.rows, cols = sys.cols;

  // Scale the rational rhs to integers so the whole elimination is integral.
  Int scale = 1;
  for (const auto& r : rhs) {
    Int d = denominator(r);
    scale = scale / gcd_int(scale, d) * d;
  }
  std::vector<Int> m((cols + 1) * rows);
  auto at = [&](std::size_t i, std::size_t j) -> Int& { return m[i * (cols + 1) + j]; };
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) at(i, j) = sys.at(i, j);
    Rational scaled = rhs[i] * scale;
    at(i, cols) = numerator(scaled);  // denominator is 1 by construction
  }

  // Fraction-free elimination: after each step every entry is a minor of the
  // original matrix, and the division by the previous pivot is exact.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && at(pr, c) == 0) ++pr;
    if (pr == rows) continue;
    if (pr != r)
      for (std::size_t j = 0; j <= cols; ++j) std::swap(at(r, j), at(pr, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j <= cols; ++j) {
        Int num = at(i, j) * at(r, c) - at(i, c) * at(r, j);
        Int quo, rem;
        divide_qr(num, prev, quo, rem);
        if (rem != 0) throw std::logic_error("solve_exact: inexact fraction-free division");
        at(i, j) = quo;
      }
      at(i, c) = 0;
    }
    prev = at(r, c);
    pivots.emplace_back(r, c);
    ++r;
  }

  SolveResult result;
  for (std::size_t i = r; i < rows; ++i) {
    if (at(i, cols) != 0) {
      result.status = SolveStatus::kInconsistent;
      return result;
    }
  }
  result.status = pivots.size() == cols ? SolveStatus::kUnique : SolveStatus::kUnderdetermined;
  result.nullspace_rank = cols - pivots.size();

  // Back substitution with free variables pinned to zero.
  result.solution.assign(cols, Rational(0));
  for (std::size_t idx = pivots.size(); idx-- > 0;) {
    auto [pi, pc] = pivots[idx];
    Rational acc(at(pi, cols));
    for (std::size_t j = pc + 1; j < cols; ++j)
      if (at(pi, j) != 0) acc -= Rational(at(pi, j)) * result.solution[j];
    result.solution[pc] = acc / Rational(at(pi, pc));
  }
  if (scale != 1)
    for (auto& x : result.solution) x /= scale;
  return result;
}

namespace {

// n = f*f*s with s square-free; returns (f, s). Uses machine words when the
// value fits, which it always does for the radicands this project produces.
std::pair<Int, Int> split_square(const Int& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    auto v = static_cast<std::uint64_t>(n);
    std::uint64_t f = 1, s = 1;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
      if (v % p != 0) continue;
      int e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      for (int i = 0; i < e / 2; ++i) f *= p;
      if (e % 2) s *= p;
    }
    return {Int(f), Int(s * v)};
  }
  Int v = n, f = 1, s = 1;
  for (Int p = 2; p * p <= v; ++p) {
    if (v % p != 0) continue;
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) f *= p;
    if (e % 2) s *= p;
  }
  return {f, s * v};
}

}  // namespace

RadicalSum RadicalSum::of_rational(const Rational& q) {
  RadicalSum s;
  s.add_term(q, Rational(1));
  return s;
}

void RadicalSum::add_term(const Rational& coeff, const Rational& radicand) {
  if (radicand < 0) throw std::invalid_argument("RadicalSum: negative radicand");
  if (coeff == 0 || radicand == 0) return;
  // sqrt(num/den) = (f1 / (f2 * sd)) * sqrt(sn * sd) with num = f1^2 sn,
  // den = f2^2 sd. The stored radicand sn*sd is a square-free positive
  // integer (num/den is reduced, so sn and sd are coprime), which makes
  // rationally dependent radicands collide in the map -- the zero test
  // relies on that.
  auto [fn, sn] = split_square(numerator(radicand));
  auto [fd, sd] = split_square(denominator(radicand));
  Rational canon(sn * sd);
  Rational c = coeff * Rational(fn, fd * sd);
  auto it = terms_.find(canon);
  if (it == terms_.end()) {
    terms_.emplace(std::move(canon), std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool RadicalSum::is_rational() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == 1;
}

Rational RadicalSum::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_rational()) throw std::logic_error("RadicalSum: value is irrational");
  return terms_.begin()->second;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& other) {
  for (const auto& [r, c] : other.terms_) add_term(c, r);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& other) {
  for (const auto& [r, c] : other.terms_) add_term(-c, r);
  return *this;
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum out;
  for (const auto& [r, c] : terms_) out.terms_.emplace(r, -c);
  return out;
}

RadicalSum RadicalSum::operator*(const RadicalSum& other) const {
  RadicalSum out;
  for (const auto& [r1, c1] : terms_)
    for (const auto& [r2, c2] : other.terms_) out.add_term(c1 * c2, r1 * r2);
  return out;
}

double RadicalSum::to_double() const {
  double acc = 0.0;
  for (const auto& [r, c] : terms_)
    acc += static_cast<double>(c) * std::sqrt(static_cast<double>(r));
  return acc;
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << exactnum::to_string(c);
    if (r != 1) os << "*sqrt(" << exactnum::to_string(r) << ")";
  }
  return os.str();
}

RadicalSum radical_inner(const std::vector<std::pair<Rational, Rational>>& terms_a,
                         const std::vector<std::pair<Rational, Rational>>& terms_b) {
  RadicalSum out;
  for (const auto& [ca, ra] : terms_a)
    for (const auto& [cb, rb] : terms_b) out.add_term(ca * cb, ra * rb);
  return out;
}

PhaseFraction make_phase(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("phase: zero denominator");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  num %= den;
  if (num < 0) num += den;
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return PhaseFraction{num / g, den / g};
}

std::string to_string(const PhaseFraction& p) {
  return std::to_string(p.num) + "/" + std::to_string(p.den);
}

PhaseFraction parse_phase(const std::string& text) {
  Rational r = parse_rational(text);
  Int num = numerator(r), den = denominator(r);
  if (den > std::numeric_limits<std::int64_t>::max() || num > std::numeric_limits<std::int64_t>::max() ||
      num < std::numeric_limits<std::int64_t>::min())
    throw std::invalid_argument("phase out of range: '" + text + "'");
  return make_phase(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ExactComplex ExactComplex::operator*(const ExactComplex& o) const {
  ExactComplex out;
  out.re = re * o.re;
  out.re -= im * o.im;
  out.im = re * o.im;
  out.im += im * o.re;
  return out;
}

ExactComplex ExactComplex::conj() const { return ExactComplex{re, -im}; }

std::string ExactComplex::to_string() const {
  if (im.is_zero()) return re.to_string();  // covers "0"
  if (re.is_zero()) return "(" + im.to_string() + ")*i";
  return re.to_string() + " + (" + im.to_string() + ")*i";
}

ExactComplex phased_radical(const PhaseFraction& phase, const Rational& radicand) {
  if (radicand < 0) throw std::invalid_argument("phased_radical: negative radicand");
  ExactComplex out;
  if (phase.den == 1) {
    out.re.add_term(Rational(1), radicand);
  } else if (phase.den == 2) {
    out.re.add_term(Rational(-1), radicand);
  } else if (phase.den == 4) {
    out.im.add_term(phase.num == 1 ? Rational(1) : Rational(-1), radicand);
  } else {
    throw std::domain_error("phased_radical: only phase denominators 1, 2, 4 are exact");
  }
  return out;
}

}  // namespace ssqc::exactnum
