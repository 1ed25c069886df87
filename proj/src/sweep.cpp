#include "ssqc/sweep.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include "ssqc/audit.hpp"
#include "ssqc/screens.hpp"

namespace ssqc::sweep {

using bitspace::SearchParams;
using exactnum::Rational;

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string key_of(int n, int K, int m, const std::vector<int>& w,
                   const std::vector<int>& S) {
  std::ostringstream os;
  os << "n=" << n << " K=" << K << " m=" << m << " w=" << join(w)
     << " S=" << join(S);
  return os.str();
}

}  // namespace

std::string dedup_key_of(const SearchParams& p) {
  return key_of(p.n, p.K(), p.m, p.w, p.S);
}

// Least (w', S') over unit scalings u: (w, S) -> (sorted uw, sorted uS) mod m.
std::string scaling_class_of(const SearchParams& p) {
  std::vector<int> best_w = p.w, best_S = p.S;
  std::sort(best_w.begin(), best_w.end());
  std::sort(best_S.begin(), best_S.end());
  for (int u = 2; u < p.m; ++u) {
    if (std::gcd(u, p.m) != 1) continue;
    std::vector<int> w2, S2;
    w2.reserve(p.w.size());
    S2.reserve(p.S.size());
    for (int wi : p.w) w2.push_back(wi * u % p.m);
    for (int sj : p.S) S2.push_back(sj * u % p.m);
    std::sort(w2.begin(), w2.end());
    std::sort(S2.begin(), S2.end());
    if (std::tie(w2, S2) < std::tie(best_w, best_S)) {
      best_w = std::move(w2);
      best_S = std::move(S2);
    }
  }
  return key_of(p.n, p.K(), p.m, best_w, best_S);
}

namespace {

// S odometer: strictly increasing residues from [1, m-1], K-1 of them; the
// screen test per tuple is membership in the +-w_i difference set. Returns
// the number of tuples examined.
template <typename Sink>
std::int64_t scan_s_tuples(int n, int K, int m, const std::vector<int>& w,
                           bool coprime_filter, Sink&& sink) {
  std::vector<char> bad(m, 0);
  for (int wi : w) {
    bad[wi % m] = 1;
    bad[(m - wi % m) % m] = 1;
  }
  std::int64_t examined = 0;
  if (K == 1) {
    ++examined;
    SearchParams p{n, m, w, {0}};
    sink(p);
    return examined;
  }
  if (K - 1 > m - 1) return 0;
  std::vector<int> S(K, 0);
  std::iota(S.begin() + 1, S.end(), 1);
  for (;;) {
    ++examined;
    bool pass = true;
    for (int j = 0; j < K && pass; ++j)
      for (int k = j + 1; k < K; ++k)
        if (bad[(S[k] - S[j]) % m]) {
          pass = false;
          break;
        }
    if (pass && coprime_filter) {
      int g = m;
      for (int j = 1; j < K; ++j) g = std::gcd(g, S[j]);
      pass = g == 1;
    }
    if (pass) {
      SearchParams p{n, m, w, S};
      sink(p);
    }
    int i = K - 1;
    while (i >= 1 && S[i] == m - 1 - (K - 1 - i)) --i;
    if (i < 1) break;
    ++S[i];
    for (int j = i + 1; j < K; ++j) S[j] = S[j - 1] + 1;
  }
  return examined;
}

// Nondecreasing w in [1, m-1]^n, lexicographic.
template <typename Visit>
void scan_w_vectors(int n, int m, Visit&& visit) {
  std::vector<int> w(n, 1);
  for (;;) {
    visit(w);
    int i = n - 1;
    while (i >= 0 && w[i] == m - 1) --i;
    if (i < 0) break;
    ++w[i];
    for (int j = i + 1; j < n; ++j) w[j] = w[i];
  }
}

struct Partition {
  int m;
  std::vector<int> w;
};

struct WorkerResult {
  std::vector<HitRecord> hits;
  std::vector<FlaggedRecord> flagged;
  std::int64_t tuples = 0;
  std::int64_t screen_passed = 0;
  std::int64_t classes_ok = 0;
  std::int64_t distance_ok = 0;
  std::int64_t feasible = 0;
};

}  // namespace

void validate(const SweepConfig& config) {
  if (config.n < 1 || config.n > bitspace::kMaxSites)
    throw std::invalid_argument("sweep: n must be in [1, 24]");
  if (config.K < 1) throw std::invalid_argument("sweep: K must be >= 1");
  if (config.m_min < 2 || config.m_max < config.m_min)
    throw std::invalid_argument("sweep: need 2 <= m_min <= m_max");
  if (config.m_max > 255)
    throw std::invalid_argument("sweep: m_max above the residue-table range");
  if (config.parallelism < 1)
    throw std::invalid_argument("sweep: parallelism must be >= 1");
  if (config.denominator_bound && *config.denominator_bound < 1)
    throw std::invalid_argument("sweep: denominator bound must be >= 1");
}

void for_each_candidate(const SweepConfig& config,
                        const std::function<void(const SearchParams&)>& sink) {
  validate(config);
  for (int m = config.m_min; m <= config.m_max; ++m)
    scan_w_vectors(config.n, m, [&](const std::vector<int>& w) {
      scan_s_tuples(config.n, config.K, m, w, config.coprime_filter, sink);
    });
}

std::vector<SearchParams> enumerate_candidates(const SweepConfig& config) {
  std::vector<SearchParams> out;
  for_each_candidate(config, [&](const SearchParams& p) { out.push_back(p); });
  return out;
}

PipelineOutcome process_candidate(const SearchParams& params,
                                  const SweepConfig& config) {
  PipelineOutcome out;
  auto classes = bitspace::residue_classes(params);
  for (const auto& cls : classes)
    if (cls.members.empty()) return out;
  out.classes_ok = true;

  auto dist = screens::distance_check(classes);
  if (dist.distance && *dist.distance == 1 && bitspace::is_canonical(params) &&
      !screens::shift_screen(params)) {
    // The screen is a proven sufficient condition; reaching distance 1 past
    // it means the implementation broke, not the candidate.
    throw std::logic_error("sweep: shift screen passed but union distance is 1 at " +
                           key_of(params.n, params.K(), params.m, params.w, params.S));
  }
  const bool dist_ok = config.require_exact_distance_2
                           ? dist.distance && *dist.distance == 2
                           : dist.pass;
  if (!dist_ok) return out;
  out.distance_ok = true;

  auto solved = zfeas::solve_feasibility(zfeas::build_lp(classes));
  if (std::holds_alternative<zfeas::Infeasible>(solved)) return out;
  out.feasible = true;
  auto& table = std::get<zfeas::ProbabilityTable>(solved);

  if (config.denominator_bound) {
    const exactnum::Int bound(*config.denominator_bound);
    for (const auto& block : table.blocks)
      for (const auto& [x, p] : block)
        if (denominator(p) > bound) {
          out.flag = FlaggedRecord{
              params, "denominator " + denominator(p).str() +
                          " exceeds the certificate bound " + bound.str()};
          return out;
        }
  }

  codes::LogicalCode code;
  try {
    code = codes::assemble(params, table);
  } catch (const std::exception& e) {
    out.flag = FlaggedRecord{params, std::string("assembly failed: ") + e.what()};
    return out;
  }
  auto report = audit::full_audit(code);
  if (!report.overall) {
    out.flag = FlaggedRecord{params, "audit rejected a feasible candidate"};
    return out;
  }

  HitRecord hit;
  hit.params = params;
  for (const auto& cls : classes)
    hit.class_sizes.push_back(static_cast<int>(cls.members.size()));
  hit.probabilities = std::move(table);
  hit.z_expectations = codes::z_expectations(code)[0];
  hit.order = codes::transversal_action(code).order;
  hit.audit_ok = true;
  hit.dedup_key = key_of(params.n, params.K(), params.m, params.w, params.S);
  hit.scaling_class = scaling_class_of(params);
  out.hit = std::move(hit);
  return out;
}

SweepResult run_sweep(const SweepConfig& config) {
  validate(config);

  std::vector<Partition> parts;
  for (int m = config.m_min; m <= config.m_max; ++m)
    scan_w_vectors(config.n, m,
                   [&](const std::vector<int>& w) { parts.push_back({m, w}); });

  const int jobs = std::max(1, config.parallelism);
  std::vector<WorkerResult> results(jobs);
  std::vector<std::exception_ptr> errors(jobs);

  auto work = [&](int slot) {
    try {
      WorkerResult& local = results[slot];
      const std::size_t lo = parts.size() * slot / jobs;
      const std::size_t hi = parts.size() * (slot + 1) / jobs;
      for (std::size_t idx = lo; idx < hi; ++idx) {
        const auto& part = parts[idx];
        local.tuples += scan_s_tuples(
            config.n, config.K, part.m, part.w, config.coprime_filter,
            [&](const SearchParams& p) {
              ++local.screen_passed;
              auto outcome = process_candidate(p, config);
              local.classes_ok += outcome.classes_ok;
              local.distance_ok += outcome.distance_ok;
              local.feasible += outcome.feasible;
              if (outcome.hit) local.hits.push_back(std::move(*outcome.hit));
              if (outcome.flag) local.flagged.push_back(std::move(*outcome.flag));
            });
      }
    } catch (...) {
      errors[slot] = std::current_exception();
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int j = 0; j < jobs; ++j) threads.emplace_back(work, j);
    for (auto& t : threads) t.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  SweepResult out;
  out.w_vectors = static_cast<std::int64_t>(parts.size());
  for (auto& local : results) {
    out.tuples += local.tuples;
    out.screen_passed += local.screen_passed;
    out.classes_ok += local.classes_ok;
    out.distance_ok += local.distance_ok;
    out.feasible += local.feasible;
    std::move(local.hits.begin(), local.hits.end(), std::back_inserter(out.hits));
    std::move(local.flagged.begin(), local.flagged.end(),
              std::back_inserter(out.flagged));
  }

  std::sort(out.hits.begin(), out.hits.end(), [](const HitRecord& a, const HitRecord& b) {
    return std::tie(a.order, a.params.m, a.params.w, a.params.S) <
           std::tie(b.order, b.params.m, b.params.w, b.params.S);
  });
  std::sort(out.flagged.begin(), out.flagged.end(),
            [](const FlaggedRecord& a, const FlaggedRecord& b) {
              return std::tie(a.params.m, a.params.w, a.params.S) <
                     std::tie(b.params.m, b.params.w, b.params.S);
            });
  return out;
}

std::map<std::pair<int, int>, int> max_order_summary(const std::vector<HitRecord>& hits) {
  std::map<std::pair<int, int>, int> out;
  for (const auto& hit : hits) {
    auto key = std::make_pair(hit.params.n, hit.params.K());
    auto [it, inserted] = out.emplace(key, hit.order);
    if (!inserted) it->second = std::max(it->second, hit.order);
  }
  return out;
}

}  // namespace ssqc::sweep
