// Command-line front end: sweep | verify | family | show | summarize.
// Exit status: 0 success, 1 verification failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ssqc/audit.hpp"
#include "ssqc/bitspace.hpp"
#include "ssqc/catalog.hpp"
#include "ssqc/codes.hpp"
#include "ssqc/families.hpp"
#include "ssqc/sweep.hpp"

namespace {

using namespace ssqc;

std::string phase_name(const exactnum::PhaseFraction& p) {
  if (p.num == 0) return "1";
  if (p.den == 2) return "-1";
  if (p.den == 4 && p.num == 1) return "i";
  if (p.den == 4 && p.num == 3) return "-i";
  return "w" + std::to_string(p.den) + "^" + std::to_string(p.num);
}

std::string gate_name(const codes::TransversalAction& act) {
  std::string out = "diag(";
  for (std::size_t i = 0; i < act.gate.size(); ++i)
    out += (i ? "," : "") + phase_name(act.gate[i]);
  return out + ")";
}

std::string amplitude_name(const codes::Amplitude& a) {
  std::string head;
  if (a.phase.num == 0)
    head = "+";
  else if (a.phase.den == 2)
    head = "-";
  else if (a.phase.den == 4 && a.phase.num == 1)
    head = "+i*";
  else if (a.phase.den == 4 && a.phase.num == 3)
    head = "-i*";
  else
    head = "e(" + exactnum::to_string(a.phase) + ")*";
  return head + "sqrt(" + exactnum::to_string(a.radicand) + ")";
}

struct SweepOptions {
  sweep::SweepConfig config;
  std::int64_t denom_bound = 0;
  bool denom_bound_set = false;
  std::string out_path;
};

int run_sweep_cmd(SweepOptions& opt) {
  if (opt.denom_bound_set) opt.config.denominator_bound = opt.denom_bound;
  auto result = sweep::run_sweep(opt.config);

  std::cout << "sweep n=" << opt.config.n << " K=" << opt.config.K
            << " m=[" << opt.config.m_min << "," << opt.config.m_max << "]\n";
  std::cout << "  w vectors " << result.w_vectors << ", residue tuples "
            << result.tuples << ", past screen " << result.screen_passed
            << ", classes ok " << result.classes_ok << ", distance ok "
            << result.distance_ok << ", feasible " << result.feasible << "\n";
  std::cout << "  hits " << result.hits.size() << ", flagged "
            << result.flagged.size() << "\n";

  std::map<int, int> per_order;
  for (const auto& h : result.hits) ++per_order[h.order];
  for (const auto& [order, count] : per_order)
    std::cout << "  order " << order << ": " << count << "\n";
  for (const auto& [nk, order] : sweep::max_order_summary(result.hits))
    std::cout << "  max order for n=" << nk.first << " K=" << nk.second
              << ": " << order << "\n";

  if (!opt.out_path.empty()) {
    std::vector<catalog::CatalogRecord> records;
    records.reserve(result.hits.size() + result.flagged.size());
    for (const auto& h : result.hits) records.push_back(catalog::from_hit(h));
    for (const auto& f : result.flagged) records.push_back(catalog::from_flag(f));
    auto written = catalog::write_catalog(records, opt.out_path);
    std::cout << "  wrote " << written << " records to " << opt.out_path << "\n";
  }
  return 0;
}

// Re-audit one realized code under the requested mode.
bool re_audit(const codes::LogicalCode& code, const std::string& mode) {
  if (mode == "both") return audit::full_audit(code).overall;
  audit::AuditConfig config;
  config.mode = mode == "float" ? audit::Mode::kFloat : audit::Mode::kRational;
  auto kl = audit::kl_check(code, config);
  auto tv = audit::transversal_check(code, config);
  bool ok = kl.kl_pass;
  for (const auto& entry : tv) ok = ok && entry.pass;
  return ok;
}

int run_verify_cmd(const std::string& in_path, const std::string& mode) {
  auto loaded = catalog::read_catalog(in_path);
  for (const auto& warning : loaded.warnings)
    std::cerr << "warning: " << warning << "\n";

  int accepted = 0, failed = 0, acknowledged = 0;
  for (std::size_t i = 0; i < loaded.records.size(); ++i) {
    const auto& rec = loaded.records[i];
    const std::string label = "#" + std::to_string(i + 1) + " " + rec.kind +
                              " " + sweep::dedup_key_of(rec.params);
    if (rec.kind == "flagged") {
      ++acknowledged;
      std::cout << label << ": flagged at discovery (" << rec.note << ")\n";
      continue;
    }

    std::string verdict;
    bool ok = rec.audit_ok;
    if (!ok) verdict = "record declares a failed audit";
    codes::LogicalCode code;
    if (ok) {
      try {
        auto realized = catalog::realize(rec);
        code = *realized;
      } catch (const std::exception& e) {
        ok = false;
        verdict = std::string("does not assemble: ") + e.what();
      }
    }
    if (ok && !re_audit(code, mode)) {
      ok = false;
      verdict = "re-audit rejects the certificate";
    }
    if (ok) {
      try {
        auto action = codes::transversal_action(code);
        if (action.order != rec.order) {
          ok = false;
          verdict = "declared order " + std::to_string(rec.order) +
                    " but the gate has order " + std::to_string(action.order);
        } else {
          verdict = "accept (order " + std::to_string(action.order) + ", gate " +
                    gate_name(action) + ")";
        }
      } catch (const std::exception& e) {
        ok = false;
        verdict = std::string("no well-defined gate: ") + e.what();
      }
    }
    if (ok && codes::z_expectations(code)[0] != rec.z_expectations) {
      ok = false;
      verdict = "recorded Z expectations disagree with the table";
    }
    if (ok) {
      std::vector<int> sizes;
      if (rec.kind == "hit")
        for (const auto& cls : bitspace::residue_classes(rec.params))
          sizes.push_back(static_cast<int>(cls.members.size()));
      else
        for (const auto& state : code.states)
          sizes.push_back(static_cast<int>(state.size()));
      if (sizes != rec.classes) {
        ok = false;
        verdict = "recorded class sizes disagree";
      }
    }

    std::cout << label << ": " << (ok ? "" : "FLAG: ") << verdict << "\n";
    ++(ok ? accepted : failed);
  }
  std::cout << loaded.records.size() << " records: " << accepted
            << " accepted, " << failed << " failed re-audit, " << acknowledged
            << " flagged at discovery\n";
  return failed > 0 ? 1 : 0;
}

// Shared tail of the family subcommands: audit, report, persist.
int finish_family(const codes::LogicalCode& code, const std::string& out_path) {
  auto report = audit::full_audit(code);
  auto action = codes::transversal_action(code);
  auto z = codes::z_expectations(code)[0];
  std::cout << "params " << sweep::dedup_key_of(code.params) << "\n";
  std::cout << "Z expectations per site:";
  for (const auto& v : z) std::cout << " " << exactnum::to_string(v);
  std::cout << "\n";
  std::cout << "gate " << gate_name(action) << ", order " << action.order << "\n";
  std::cout << "audit: " << (report.overall ? "accept" : "reject") << "\n";
  if (!out_path.empty()) {
    catalog::write_catalog({catalog::from_code(code, report.overall)}, out_path);
    std::cout << "wrote 1 record to " << out_path << "\n";
  }
  return report.overall ? 0 : 1;
}

int run_family_extrema(int n, int m, int s, const std::string& out_path) {
  families::ExtremaFamilySpec spec;
  spec.n = n;
  spec.m = m;
  spec.s = s;
  auto built = families::build_extrema_code(spec);
  if (!built.screen_ok) std::cerr << "warning: " << built.screen_note << "\n";
  return finish_family(built.code, out_path);
}

int run_family_even_parity(const std::string& spec_path, const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) throw std::invalid_argument("cannot open spec file '" + spec_path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("spec file is not valid JSON: ") + e.what());
  }
  families::EvenParityFamilySpec spec;
  try {
    spec.n = j.at("n").get<int>();
    spec.m = j.at("m").get<int>();
    spec.w = j.at("w").get<std::vector<int>>();
    spec.S = j.at("S").get<std::vector<int>>();
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("spec file needs n, m, w, S: ") + e.what());
  }
  if (j.contains("K") && j["K"].get<int>() != static_cast<int>(spec.S.size()))
    throw std::invalid_argument("spec file K disagrees with the length of S");
  return finish_family(families::build_even_parity_code(spec), out_path);
}

int run_show_cmd(const std::string& in_path, std::optional<int> index) {
  auto loaded = catalog::read_catalog(in_path);
  for (const auto& warning : loaded.warnings)
    std::cerr << "warning: " << warning << "\n";
  if (index && (*index < 1 || *index > static_cast<int>(loaded.records.size())))
    throw std::invalid_argument("record index out of range");

  for (std::size_t i = 0; i < loaded.records.size(); ++i) {
    if (index && static_cast<int>(i + 1) != *index) continue;
    const auto& rec = loaded.records[i];
    std::cout << "record " << i + 1 << ": " << rec.kind << " "
              << sweep::dedup_key_of(rec.params) << "\n";
    if (rec.kind == "flagged") {
      std::cout << "  reason: " << rec.note << "\n";
      continue;
    }
    std::cout << "  classes:";
    for (int c : rec.classes) std::cout << " " << c;
    std::cout << "\n  order " << rec.order << ", audit "
              << (rec.audit_ok ? "ok" : "rejected") << "\n";
    std::cout << "  Z expectations:";
    for (const auto& v : rec.z_expectations)
      std::cout << " " << exactnum::to_string(v);
    std::cout << "\n";
    if (rec.kind == "hit") {
      for (std::size_t b = 0; b < rec.probabilities.blocks.size(); ++b) {
        std::cout << "  block " << b << ":";
        for (const auto& [x, p] : rec.probabilities.blocks[b])
          std::cout << " " << bitspace::render(x) << "=" << exactnum::to_string(p);
        std::cout << "\n";
      }
    } else {
      for (std::size_t b = 0; b < rec.amplitudes.size(); ++b) {
        std::cout << "  state " << b << ":";
        for (const auto& [x, a] : rec.amplitudes[b])
          std::cout << " " << amplitude_name(a) << "|" << bitspace::render(x) << ">";
        std::cout << "\n";
      }
    }
  }
  return 0;
}

int run_summarize_cmd(const std::string& in_path) {
  auto loaded = catalog::read_catalog(in_path);
  for (const auto& warning : loaded.warnings)
    std::cerr << "warning: " << warning << "\n";

  std::map<std::string, int> kinds;
  std::map<int, int> per_order;
  std::map<std::pair<int, int>, int> max_order;
  std::map<std::pair<int, int>, std::set<std::string>> scaling;
  for (const auto& rec : loaded.records) {
    ++kinds[rec.kind];
    if (rec.kind == "flagged") continue;
    ++per_order[rec.order];
    auto nk = std::make_pair(rec.params.n, rec.params.K());
    auto [it, fresh] = max_order.emplace(nk, rec.order);
    if (!fresh) it->second = std::max(it->second, rec.order);
    scaling[nk].insert(sweep::scaling_class_of(rec.params));
  }

  std::cout << loaded.records.size() << " records";
  for (const auto& [kind, count] : kinds)
    std::cout << ", " << count << " " << kind;
  std::cout << "\n";
  for (const auto& [order, count] : per_order)
    std::cout << "order " << order << ": " << count << "\n";
  for (const auto& [nk, order] : max_order)
    std::cout << "n=" << nk.first << " K=" << nk.second << ": max order "
              << order << ", " << scaling[nk].size() << " scaling classes\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residue-class code search: exact sweep, audit, and catalog tools"};
  app.require_subcommand(1);

  SweepOptions sweep_opt;
  sweep_opt.config.parallelism =
      static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* sweep_cmd = app.add_subcommand("sweep", "enumerate candidates and record hits");
  sweep_cmd->add_option("--n", sweep_opt.config.n, "number of sites")->required();
  sweep_cmd->add_option("--k", sweep_opt.config.K, "number of logical states")->required();
  sweep_cmd->add_option("--m-min", sweep_opt.config.m_min, "smallest modulus")->required();
  sweep_cmd->add_option("--m-max", sweep_opt.config.m_max, "largest modulus")->required();
  sweep_cmd->add_flag("--coprime", sweep_opt.config.coprime_filter,
                      "keep only tuples with gcd(m, S_1..S_{K-1}) = 1");
  auto* db = sweep_cmd->add_option("--denom-bound", sweep_opt.denom_bound,
                                   "flag hits whose denominators exceed this");
  sweep_cmd->add_option("--jobs", sweep_opt.config.parallelism,
                        "worker threads (default: available parallelism)");
  sweep_cmd->add_option("--out", sweep_opt.out_path, "catalog file for machine records");

  std::string verify_in, verify_mode = "both";
  auto* verify_cmd = app.add_subcommand("verify", "re-audit every record of a catalog");
  verify_cmd->add_option("--in", verify_in, "catalog file")->required();
  verify_cmd->add_option("--mode", verify_mode, "float | rational | both")
      ->check(CLI::IsMember({"float", "rational", "both"}));

  auto* family_cmd = app.add_subcommand("family", "build one of the closed-form codes");
  family_cmd->require_subcommand(1);
  int fam_n = 0, fam_m = 0, fam_s = 0;
  std::string family_out, even_spec;
  auto* extrema_cmd = family_cmd->add_subcommand(
      "extrema", "two extremal strings against two weight slices");
  extrema_cmd->add_option("--n", fam_n, "number of sites")->required();
  extrema_cmd->add_option("--m", fam_m, "modulus")->required();
  extrema_cmd->add_option("--s", fam_s, "slice residue")->required();
  extrema_cmd->add_option("--out", family_out, "write the code record here");
  auto* even_cmd = family_cmd->add_subcommand(
      "even-parity", "uniform superpositions over even-parity classes");
  even_cmd->add_option("--spec-file", even_spec, "JSON object with n, m, w, S")->required();
  even_cmd->add_option("--out", family_out, "write the code record here");
  auto* c642_cmd = family_cmd->add_subcommand(
      "c642", "the shared-support ((6,4,2)) code");
  c642_cmd->add_option("--out", family_out, "write the code record here");

  std::string show_in;
  int show_index = 0;
  auto* show_cmd = app.add_subcommand("show", "print catalog records in readable form");
  show_cmd->add_option("--in", show_in, "catalog file")->required();
  auto* idx = show_cmd->add_option("--index", show_index, "1-based record to show");

  std::string summarize_in;
  auto* summarize_cmd = app.add_subcommand("summarize", "per-order counts for a catalog");
  summarize_cmd->add_option("--in", summarize_in, "catalog file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sweep_cmd) {
      sweep_opt.denom_bound_set = db->count() > 0;
      return run_sweep_cmd(sweep_opt);
    }
    if (*verify_cmd) return run_verify_cmd(verify_in, verify_mode);
    if (*extrema_cmd) return run_family_extrema(fam_n, fam_m, fam_s, family_out);
    if (*even_cmd) return run_family_even_parity(even_spec, family_out);
    if (*c642_cmd) return finish_family(families::build_642_code(), family_out);
    if (*show_cmd)
      return run_show_cmd(show_in, idx->count() ? std::optional<int>(show_index)
                                                : std::nullopt);
    if (*summarize_cmd) return run_summarize_cmd(summarize_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
