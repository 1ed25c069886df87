#include "ssqc/screens.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace ssqc::screens {

using bitspace::BitString;
using bitspace::ResidueClass;
using bitspace::SearchParams;
using exactnum::Rational;

std::optional<ShiftScreenFailure> shift_screen(const SearchParams& params) {
  validate(params);
  if (!is_canonical(params)) {
    throw std::invalid_argument("shift_screen: params must be in canonical form");
  }
  const int m = params.m;
  for (int j = 1; j < params.K(); ++j) {
    for (int k = 0; k < j; ++k) {
      int diff = ((params.S[j] - params.S[k]) % m + m) % m;
      for (int i = 0; i < params.n; ++i) {
        int wi = params.w[i] % m;
        if (diff == wi || diff == (m - wi) % m) return ShiftScreenFailure{i, j, k};
      }
    }
  }
  return std::nullopt;
}

DistanceCheck distance_check(const std::vector<ResidueClass>& classes) {
  DistanceCheck out;
  out.distance = union_distance(classes);
  out.pass = !out.distance.has_value() || *out.distance >= 2;
  return out;
}

namespace {

// alpha . v(x) over the integers; v is the +-1 sign vector of x.
long long alpha_dot(const std::vector<int>& alpha, BitString x) {
  long long acc = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    acc += x.bit(static_cast<int>(i)) ? -alpha[i] : alpha[i];
  return acc;
}

struct Extremes {
  long long lo = std::numeric_limits<long long>::max();
  long long hi = std::numeric_limits<long long>::min();
  bool any = false;
};

Extremes scan(const std::vector<int>& alpha, const ResidueClass& cls) {
  Extremes e;
  for (BitString x : cls.members) {
    long long v = alpha_dot(alpha, x);
    e.lo = std::min(e.lo, v);
    e.hi = std::max(e.hi, v);
    e.any = true;
  }
  return e;
}

}  // namespace

bool verify_separator(const SeparatorCertificate& cert,
                      const std::vector<ResidueClass>& classes) {
  if (cert.class_low < 0 || cert.class_high < 0 ||
      cert.class_low >= static_cast<int>(classes.size()) ||
      cert.class_high >= static_cast<int>(classes.size())) {
    throw std::out_of_range("verify_separator: class index out of range");
  }
  Extremes low = scan(cert.alpha, classes[cert.class_low]);
  Extremes high = scan(cert.alpha, classes[cert.class_high]);
  if (!low.any || !high.any) return false;
  return Rational(low.hi) < cert.beta && cert.beta < Rational(high.lo);
}

std::vector<SeparatorCertificate> propose_separators(
    const SearchParams& params, const std::vector<ResidueClass>& classes) {
  std::set<std::vector<int>> family;
  for (int i = 0; i < params.n; ++i) {
    std::vector<int> e(params.n, 0);
    e[i] = 1;
    family.insert(e);
    e[i] = -1;
    family.insert(e);
  }
  family.insert(std::vector<int>(params.n, 1));
  std::set<int> weights(params.w.begin(), params.w.end());
  for (int wv : weights) {
    std::vector<int> ind(params.n, 0);
    for (int i = 0; i < params.n; ++i) ind[i] = params.w[i] == wv ? 1 : 0;
    family.insert(ind);
  }

  std::vector<SeparatorCertificate> found;
  for (const auto& alpha : family) {
    std::vector<Extremes> ex;
    ex.reserve(classes.size());
    for (const auto& cls : classes) ex.push_back(scan(alpha, cls));
    for (std::size_t j = 0; j < classes.size(); ++j) {
      for (std::size_t k = 0; k < classes.size(); ++k) {
        if (j == k || !ex[j].any || !ex[k].any) continue;
        if (ex[j].hi < ex[k].lo) {
          SeparatorCertificate cert;
          cert.alpha = alpha;
          cert.beta = Rational(ex[j].hi + ex[k].lo, 2);
          cert.class_low = static_cast<int>(j);
          cert.class_high = static_cast<int>(k);
          if (verify_separator(cert, classes)) found.push_back(std::move(cert));
        }
      }
    }
  }
  return found;
}

}  // namespace ssqc::screens
