#include "doctest.h"

#include <sstream>

#include "known_codes.hpp"
#include "ssqc/audit.hpp"
#include "ssqc/catalog.hpp"
#include "ssqc/families.hpp"
#include "ssqc/sweep.hpp"

using namespace ssqc;
using catalog::CatalogRecord;

namespace {

sweep::SweepConfig cfg(int n, int K, int lo, int hi) {
  sweep::SweepConfig c;
  c.n = n;
  c.K = K;
  c.m_min = lo;
  c.m_max = hi;
  return c;
}

const sweep::HitRecord& running_example_hit() {
  static const sweep::HitRecord hit = [] {
    bitspace::SearchParams p;
    p.n = 5;
    p.m = 7;
    p.w = {1, 1, 2, 2, 2};
    p.S = {0, 4};
    auto out = sweep::process_candidate(p, cfg(5, 2, 7, 7));
    REQUIRE(out.hit.has_value());
    return *out.hit;
  }();
  return hit;
}

// A corpus covering all three kinds and every family shape.
std::vector<CatalogRecord> corpus() {
  std::vector<CatalogRecord> records;
  records.push_back(catalog::from_hit(running_example_hit()));
  for (const auto& inst : known::two_block_instances())
    records.push_back(catalog::from_code(known::code_of(inst), true));
  for (const auto& inst : known::three_block_instances())
    records.push_back(catalog::from_code(known::code_of(inst), true));
  for (const auto& inst : known::four_block_instances())
    records.push_back(catalog::from_code(known::code_of(inst), true));
  records.push_back(catalog::from_code(families::build_642_code(), true));
  {
    families::EvenParityFamilySpec spec;
    spec.n = 6;
    spec.m = 8;
    spec.w = {6, 4, 0, 2, 7, 5};  // zero weight and unsorted on purpose
    spec.S = {0, 2};
    records.push_back(catalog::from_code(families::build_even_parity_code(spec), true));
  }
  {
    families::ExtremaFamilySpec spec;
    spec.n = 5;
    spec.m = 5;
    spec.s = 2;
    records.push_back(catalog::from_code(families::build_extrema_code(spec).code, true));
  }
  {
    sweep::FlaggedRecord flag;
    flag.params.n = 4;
    flag.params.m = 4;
    flag.params.w = {1, 1, 1, 1};
    flag.params.S = {0, 2};
    flag.reason = "denominator 2 exceeds the certificate bound 1";
    records.push_back(catalog::from_flag(flag));
  }
  return records;
}

}  // namespace

TEST_CASE("round trip identity over the whole corpus") {
  auto records = corpus();
  for (const auto& r : records) {
    auto line = catalog::render_record(r);
    CHECK(catalog::parse_record(line) == r);
    // Rendering is a pure function of the record.
    CHECK(catalog::render_record(catalog::parse_record(line)) == line);
  }

  std::ostringstream out;
  CHECK(catalog::write_catalog(records, out) == records.size());
  std::istringstream in(out.str());
  auto back = catalog::read_catalog(in);
  CHECK(back.warnings.empty());
  REQUIRE(back.records.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    CHECK(back.records[i] == records[i]);
}

TEST_CASE("documented lines") {
  SUBCASE("the running-example hit mentions 3/7 and order 7") {
    auto line = catalog::render_record(catalog::from_hit(running_example_hit()));
    CHECK(line.find("3/7") != std::string::npos);
    CHECK(line.find("\"order\":7") != std::string::npos);
    CHECK(line.find("\"kind\":\"hit\"") != std::string::npos);
    CHECK(line.find("\"audit\":true") != std::string::npos);
  }
  SUBCASE("the shared-support code keeps its signs and residues") {
    auto line = catalog::render_record(catalog::from_code(families::build_642_code(), true));
    CHECK(line.find("\"S\":[0,0,0,1]") != std::string::npos);
    CHECK(line.find("\"phase\":\"1/2\"") != std::string::npos);
    CHECK(line.find("\"order\":4") != std::string::npos);
  }
  SUBCASE("empty catalog writes zero lines and reads back empty") {
    std::ostringstream out;
    CHECK(catalog::write_catalog({}, out) == 0);
    CHECK(out.str().empty());
    std::istringstream in(out.str());
    auto back = catalog::read_catalog(in);
    CHECK(back.records.empty());
    CHECK(back.warnings.empty());
  }
}

TEST_CASE("byte stability") {
  auto records = corpus();
  std::ostringstream a, b;
  catalog::write_catalog(records, a);
  catalog::write_catalog(records, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().back() == '\n');

  // A fresh sweep serializes to the same bytes as a replayed one.
  auto res1 = sweep::run_sweep(cfg(4, 2, 4, 5));
  auto res2 = sweep::run_sweep(cfg(4, 2, 4, 5));
  std::vector<CatalogRecord> c1, c2;
  for (const auto& h : res1.hits) c1.push_back(catalog::from_hit(h));
  for (const auto& h : res2.hits) c2.push_back(catalog::from_hit(h));
  std::ostringstream s1, s2;
  catalog::write_catalog(c1, s1);
  catalog::write_catalog(c2, s2);
  CHECK(!s1.str().empty());
  CHECK(s1.str() == s2.str());
}

TEST_CASE("realize rebuilds the certified code") {
  auto hit_rec = catalog::from_hit(running_example_hit());
  auto code = catalog::realize(hit_rec);
  REQUIRE(code.has_value());
  CHECK(audit::full_audit(*code).overall);
  CHECK(codes::transversal_action(*code).order == 7);

  auto code_rec = catalog::from_code(families::build_642_code(), true);
  auto rebuilt = catalog::realize(code_rec);
  REQUIRE(rebuilt.has_value());
  CHECK(rebuilt->states == families::build_642_code().states);

  sweep::FlaggedRecord flag;
  flag.params.n = 4;
  flag.params.m = 4;
  flag.params.w = {1, 1, 1, 1};
  flag.params.S = {0, 2};
  flag.reason = "audit rejected a feasible candidate";
  CHECK(!catalog::realize(catalog::from_flag(flag)).has_value());
}

TEST_CASE("malformed input is rejected with the line number") {
  auto records = corpus();
  std::ostringstream out;
  catalog::write_catalog(records, out);
  const std::string good = out.str();

  SUBCASE("zero denominator") {
    auto lines = good;
    auto pos = lines.find("3/7");
    REQUIRE(pos != std::string::npos);
    lines.replace(pos, 3, "3/0");
    std::istringstream in(lines);
    try {
      catalog::read_catalog(in);
      FAIL("expected a parse error");
    } catch (const catalog::ParseError& e) {
      CHECK(e.line == 1);  // the hit record is the first line
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
  }
  SUBCASE("the failing line is named even deep in the file") {
    std::istringstream in(good + "not json at all\n");
    try {
      catalog::read_catalog(in);
      FAIL("expected a parse error");
    } catch (const catalog::ParseError& e) {
      CHECK(e.line == static_cast<int>(records.size()) + 1);
    }
  }
  SUBCASE("non-canonical rationals are corruption") {
    auto lines = good;
    auto pos = lines.find("\"3/7\"");
    REQUIRE(pos != std::string::npos);
    lines.replace(pos, 5, "\"6/14\"");
    std::istringstream in(lines);
    CHECK_THROWS_AS(catalog::read_catalog(in), catalog::ParseError);
  }
}

TEST_CASE("strict single-line parsing") {
  const std::string hit_line = catalog::render_record(catalog::from_hit(running_example_hit()));

  SUBCASE("schema version must match") {
    auto bad = hit_line;
    auto pos = bad.find("\"schema_version\":1");
    bad.replace(pos, 18, "\"schema_version\":2");
    CHECK_THROWS_WITH_AS(catalog::parse_record(bad),
                         doctest::Contains("schema mismatch"), std::runtime_error);
  }
  SUBCASE("unknown kind") {
    auto bad = hit_line;
    auto pos = bad.find("\"kind\":\"hit\"");
    bad.replace(pos, 12, "\"kind\":\"hot\"");
    CHECK_THROWS_WITH_AS(catalog::parse_record(bad), doctest::Contains("kind"),
                         std::runtime_error);
  }
  SUBCASE("field order is part of the format") {
    auto bad = hit_line;
    auto pos = bad.find("\"kind\":\"hit\",\"n\":5");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 18, "\"n\":5,\"kind\":\"hit\"");
    CHECK_THROWS_WITH_AS(catalog::parse_record(bad),
                         doctest::Contains("field layout"), std::runtime_error);
  }
  SUBCASE("missing and extra fields") {
    auto missing = hit_line;
    auto pos = missing.find("\"order\":7,");
    REQUIRE(pos != std::string::npos);
    missing.erase(pos, 10);
    CHECK_THROWS_WITH_AS(catalog::parse_record(missing),
                         doctest::Contains("field layout"), std::runtime_error);

    auto extra = hit_line;
    extra.insert(extra.size() - 1, ",\"extra\":1");
    CHECK_THROWS_WITH_AS(catalog::parse_record(extra),
                         doctest::Contains("field layout"), std::runtime_error);
  }
  SUBCASE("K must match S") {
    auto bad = hit_line;
    auto pos = bad.find("\"K\":2");
    bad.replace(pos, 5, "\"K\":3");
    CHECK_THROWS_WITH_AS(catalog::parse_record(bad), doctest::Contains("K"),
                         std::runtime_error);
  }
  SUBCASE("bit strings must span the declared sites") {
    auto bad = hit_line;
    auto pos = bad.find("\"00000\"");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 7, "\"0000\"");
    CHECK_THROWS_AS(catalog::parse_record(bad), std::runtime_error);
  }
  SUBCASE("payload and kind must agree") {
    auto code_line =
        catalog::render_record(catalog::from_code(families::build_642_code(), true));
    auto bad = code_line;
    auto pos = bad.find("\"kind\":\"code\"");
    bad.replace(pos, 13, "\"kind\":\"hit\"");
    // Hit payloads are rational strings, not amplitude objects.
    CHECK_THROWS_AS(catalog::parse_record(bad), std::runtime_error);

    sweep::FlaggedRecord flag;
    flag.params.n = 4;
    flag.params.m = 4;
    flag.params.w = {1, 1, 1, 1};
    flag.params.S = {0, 2};
    flag.reason = "x";
    auto flag_line = catalog::render_record(catalog::from_flag(flag));
    auto wrong = flag_line;
    const std::string needle = "\"audit\":{\"ok\":false,\"reason\":\"x\"}";
    pos = wrong.find(needle);
    REQUIRE(pos != std::string::npos);
    wrong.replace(pos, needle.size(), "\"audit\":false");
    CHECK_THROWS_WITH_AS(catalog::parse_record(wrong),
                         doctest::Contains("inconsistent"), std::runtime_error);
  }
  SUBCASE("order zero is reserved for flagged records") {
    auto bad = hit_line;
    auto pos = bad.find("\"order\":7");
    bad.replace(pos, 9, "\"order\":0");
    CHECK_THROWS_WITH_AS(catalog::parse_record(bad),
                         doctest::Contains("order"), std::runtime_error);
  }
  SUBCASE("empty line") {
    CHECK_THROWS_AS(catalog::parse_record(""), std::runtime_error);
  }
}

TEST_CASE("duplicate dedup keys warn but both records survive") {
  auto rec = catalog::from_hit(running_example_hit());
  std::ostringstream out;
  catalog::write_catalog({rec, rec}, out);
  std::istringstream in(out.str());
  auto back = catalog::read_catalog(in);
  CHECK(back.records.size() == 2);
  REQUIRE(back.warnings.size() == 1);
  CHECK(back.warnings[0].find("duplicate dedup key") != std::string::npos);
  CHECK(back.warnings[0].find("lines 1 and 2") != std::string::npos);

  // Same parameters under a different kind are not duplicates.
  auto code = catalog::realize(rec);
  REQUIRE(code.has_value());
  auto code_rec = catalog::from_code(*code, true);
  std::ostringstream mixed;
  catalog::write_catalog({rec, code_rec}, mixed);
  std::istringstream in2(mixed.str());
  CHECK(catalog::read_catalog(in2).warnings.empty());
}

TEST_CASE("file endpoints") {
  CHECK_THROWS_WITH_AS(catalog::read_catalog("/nonexistent/path.jsonl"),
                       doctest::Contains("cannot open"), std::runtime_error);
  CHECK_THROWS_WITH_AS(catalog::write_catalog({}, "/nonexistent/dir/out.jsonl"),
                       doctest::Contains("cannot open"), std::runtime_error);
}
