#include "ssqc/catalog.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace ssqc::catalog {

using exactnum::Rational;
using ojson = nlohmann::ordered_json;

namespace {

const std::vector<std::string>& field_order() {
  static const std::vector<std::string> keys = {
      "schema_version", "kind", "n", "K", "m", "w", "S",
      "classes", "probabilities", "z_expectations", "order", "audit"};
  return keys;
}

// Round-trip canonicality: accept exactly what render writes.
Rational canonical_rational(const std::string& text) {
  Rational r = exactnum::parse_rational(text);
  if (exactnum::to_string(r) != text)
    throw std::runtime_error("non-canonical rational '" + text + "'");
  return r;
}

exactnum::PhaseFraction canonical_phase(const std::string& text) {
  auto p = exactnum::parse_phase(text);
  if (exactnum::to_string(p) != text)
    throw std::runtime_error("non-canonical phase '" + text + "'");
  return p;
}

int require_int(const ojson& j, const char* name) {
  if (!j.is_number_integer())
    throw std::runtime_error(std::string(name) + " must be an integer");
  return j.get<int>();
}

std::vector<int> require_int_array(const ojson& j, const char* name) {
  if (!j.is_array())
    throw std::runtime_error(std::string(name) + " must be an array");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(require_int(e, name));
  return out;
}

bitspace::BitString require_bits(const std::string& text, int n) {
  auto x = bitspace::parse_bits(text);
  if (x.n != n)
    throw std::runtime_error("bit string '" + text + "' is not " +
                             std::to_string(n) + " sites wide");
  return x;
}

}  // namespace

bool operator==(const CatalogRecord& a, const CatalogRecord& b) {
  return a.schema_version == b.schema_version && a.kind == b.kind &&
         a.params.n == b.params.n && a.params.m == b.params.m &&
         a.params.w == b.params.w && a.params.S == b.params.S &&
         a.classes == b.classes && a.probabilities.blocks == b.probabilities.blocks &&
         a.amplitudes == b.amplitudes && a.z_expectations == b.z_expectations &&
         a.order == b.order && a.audit_ok == b.audit_ok && a.note == b.note;
}

CatalogRecord from_hit(const sweep::HitRecord& hit) {
  CatalogRecord r;
  r.kind = "hit";
  r.params = hit.params;
  r.classes = hit.class_sizes;
  r.probabilities = hit.probabilities;
  r.z_expectations = hit.z_expectations;
  r.order = hit.order;
  r.audit_ok = hit.audit_ok;
  return r;
}

CatalogRecord from_code(const codes::LogicalCode& code, bool audit_ok) {
  CatalogRecord r;
  r.kind = "code";
  r.params = code.params;
  for (const auto& state : code.states)
    r.classes.push_back(static_cast<int>(state.size()));
  r.amplitudes = code.states;
  r.z_expectations = codes::z_expectations(code)[0];
  r.order = codes::transversal_action(code).order;
  r.audit_ok = audit_ok;
  return r;
}

CatalogRecord from_flag(const sweep::FlaggedRecord& flag) {
  CatalogRecord r;
  r.kind = "flagged";
  r.params = flag.params;
  r.note = flag.reason;
  return r;
}

std::optional<codes::LogicalCode> realize(const CatalogRecord& record) {
  if (record.kind == "flagged") return std::nullopt;
  if (record.kind == "hit") return codes::assemble(record.params, record.probabilities);
  codes::LogicalCode code;
  code.params = record.params;
  code.states = record.amplitudes;
  return code;
}

std::string render_record(const CatalogRecord& r) {
  ojson j;
  j["schema_version"] = r.schema_version;
  j["kind"] = r.kind;
  j["n"] = r.params.n;
  j["K"] = r.params.K();
  j["m"] = r.params.m;
  j["w"] = r.params.w;
  j["S"] = r.params.S;
  j["classes"] = r.classes;
  ojson blocks = ojson::array();
  if (r.kind == "code") {
    for (const auto& state : r.amplitudes) {
      ojson b = ojson::object();
      for (const auto& [x, a] : state)
        b[bitspace::render(x)] = ojson{{"phase", exactnum::to_string(a.phase)},
                                       {"radicand", exactnum::to_string(a.radicand)}};
      blocks.push_back(std::move(b));
    }
  } else {
    for (const auto& block : r.probabilities.blocks) {
      ojson b = ojson::object();
      for (const auto& [x, p] : block)
        b[bitspace::render(x)] = exactnum::to_string(p);
      blocks.push_back(std::move(b));
    }
  }
  j["probabilities"] = std::move(blocks);
  ojson z = ojson::array();
  for (const auto& v : r.z_expectations) z.push_back(exactnum::to_string(v));
  j["z_expectations"] = std::move(z);
  j["order"] = r.order;
  if (r.note.empty())
    j["audit"] = r.audit_ok;
  else
    j["audit"] = ojson{{"ok", r.audit_ok}, {"reason", r.note}};
  return j.dump();
}

CatalogRecord parse_record(const std::string& line) {
  ojson j;
  try {
    j = ojson::parse(line);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("record is not an object");
  {
    std::vector<std::string> keys;
    for (const auto& item : j.items()) keys.push_back(item.key());
    if (keys != field_order())
      throw std::runtime_error("unexpected field layout");
  }

  CatalogRecord r;
  r.schema_version = require_int(j["schema_version"], "schema_version");
  if (r.schema_version != kSchemaVersion)
    throw std::runtime_error("schema mismatch: version " +
                             std::to_string(r.schema_version));
  if (!j["kind"].is_string()) throw std::runtime_error("kind must be a string");
  r.kind = j["kind"].get<std::string>();
  if (r.kind != "hit" && r.kind != "code" && r.kind != "flagged")
    throw std::runtime_error("unknown kind '" + r.kind + "'");

  r.params.n = require_int(j["n"], "n");
  const int K = require_int(j["K"], "K");
  r.params.m = require_int(j["m"], "m");
  r.params.w = require_int_array(j["w"], "w");
  r.params.S = require_int_array(j["S"], "S");
  if (static_cast<int>(r.params.S.size()) != K)
    throw std::runtime_error("K disagrees with the length of S");
  try {
    bitspace::validate(r.params);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("bad parameters: ") + e.what());
  }

  r.classes = require_int_array(j["classes"], "classes");
  const auto& blocks = j["probabilities"];
  if (!blocks.is_array()) throw std::runtime_error("probabilities must be an array");
  const auto& z = j["z_expectations"];
  if (!z.is_array()) throw std::runtime_error("z_expectations must be an array");

  const bool payload = r.kind != "flagged";
  if (payload) {
    if (static_cast<int>(r.classes.size()) != K)
      throw std::runtime_error("classes must list one size per block");
    if (static_cast<int>(blocks.size()) != K)
      throw std::runtime_error("probabilities must carry one block per state");
    if (static_cast<int>(z.size()) != r.params.n)
      throw std::runtime_error("z_expectations must carry one value per site");
  } else if (!r.classes.empty() || !blocks.empty() || !z.empty()) {
    throw std::runtime_error("flagged records carry no payload");
  }

  for (const auto& block : blocks) {
    if (!block.is_object() || block.empty())
      throw std::runtime_error("each block must be a non-empty object");
    if (r.kind == "hit") {
      std::map<bitspace::BitString, Rational> table;
      for (const auto& item : block.items()) {
        auto x = require_bits(item.key(), r.params.n);
        if (!item.value().is_string())
          throw std::runtime_error("probability must be a rational string");
        table[x] = canonical_rational(item.value().get<std::string>());
      }
      r.probabilities.blocks.push_back(std::move(table));
    } else {
      std::map<bitspace::BitString, codes::Amplitude> state;
      for (const auto& item : block.items()) {
        auto x = require_bits(item.key(), r.params.n);
        const auto& v = item.value();
        if (!v.is_object() || v.size() != 2 || !v.contains("phase") ||
            !v.contains("radicand") || !v["phase"].is_string() ||
            !v["radicand"].is_string())
          throw std::runtime_error("amplitude must be {phase, radicand}");
        codes::Amplitude a;
        a.phase = canonical_phase(v["phase"].get<std::string>());
        a.radicand = canonical_rational(v["radicand"].get<std::string>());
        state[x] = a;
      }
      r.amplitudes.push_back(std::move(state));
    }
  }

  for (const auto& v : z) {
    if (!v.is_string())
      throw std::runtime_error("z expectation must be a rational string");
    r.z_expectations.push_back(canonical_rational(v.get<std::string>()));
  }

  r.order = require_int(j["order"], "order");
  if (payload ? r.order < 1 : r.order != 0)
    throw std::runtime_error("order inconsistent with kind");

  const auto& audit = j["audit"];
  if (audit.is_boolean()) {
    r.audit_ok = audit.get<bool>();
  } else if (audit.is_object() && audit.size() == 2 && audit.contains("ok") &&
             audit.contains("reason") && audit["ok"].is_boolean() &&
             audit["reason"].is_string()) {
    r.audit_ok = audit["ok"].get<bool>();
    r.note = audit["reason"].get<std::string>();
    if (r.note.empty()) throw std::runtime_error("audit reason must be non-empty");
  } else {
    throw std::runtime_error("audit must be a boolean or {ok, reason}");
  }
  if (payload != r.note.empty())
    throw std::runtime_error("audit annotation inconsistent with kind");
  return r;
}

std::size_t write_catalog(const std::vector<CatalogRecord>& records, std::ostream& out) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << render_record(records[i]) << '\n';
    if (!out)
      throw std::runtime_error("write failed at record " + std::to_string(i));
  }
  out.flush();
  if (!out && !records.empty())
    throw std::runtime_error("write failed at record " +
                             std::to_string(records.size() - 1));
  return records.size();
}

std::size_t write_catalog(const std::vector<CatalogRecord>& records,
                          const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return write_catalog(records, out);
}

ReadResult read_catalog(std::istream& in) {
  ReadResult out;
  std::map<std::string, int> first_seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    CatalogRecord rec;
    try {
      rec = parse_record(line);
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
    const std::string key = rec.kind + " " + sweep::dedup_key_of(rec.params);
    auto [it, fresh] = first_seen.emplace(key, line_no);
    if (!fresh)
      out.warnings.push_back("duplicate dedup key (" + key + ") at lines " +
                             std::to_string(it->second) + " and " +
                             std::to_string(line_no));
    out.records.push_back(std::move(rec));
  }
  return out;
}

ReadResult read_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_catalog(in);
}

}  // namespace ssqc::catalog
