#include "wshift/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

using namespace wshift;

namespace {

SuiteConfig quiet(SuiteConfig c = {}) {
  c.timestamps = false;
  return c;
}

std::vector<std::string> suite_names(const Report& r) {
  std::vector<std::string> out;
  for (const SuiteResult& s : r.suites) out.push_back(s.name);
  return out;
}

const SuiteResult* find_suite(const Report& r, const std::string& name) {
  for (const SuiteResult& s : r.suites) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("reference suite passes") {
  const Report r = run_suite(quiet());
  CHECK(r.all_passed());
  CHECK(suite_names(r) ==
        std::vector<std::string>{"weights", "unboundedness", "schedule", "hypercyclic", "orbit", "periodic", "distance"});
  std::size_t tally = 0;
  std::size_t passed = 0;
  for (const SuiteResult& s : r.suites) {
    tally += s.certificates.size();
    for (const Certificate& c : s.certificates) passed += c.passed ? 1 : 0;
    CHECK_FALSE(s.wall_ms.has_value());
  }
  CHECK(r.total() == tally);
  CHECK(r.passed() == passed);
}

TEST_CASE("every configured check appears exactly once") {
  SuiteConfig c = quiet();
  c.M = 4;
  c.spaces = {"l1", "l2", "c0"};
  c.periods = {1, 3};
  c.heads = {"1,-1,1/2"};
  const Report r = run_suite(c);
  REQUIRE(r.all_passed());

  CHECK(find_suite(r, "unboundedness")->certificates.size() == c.n_max);

  std::set<std::string> residuals;
  for (const Certificate& cert : find_suite(r, "orbit")->certificates) {
    if (cert.name == "orbit.residual") {
      CHECK(residuals.insert(context_value(cert, "m") + "/" + context_value(cert, "space")).second);
    }
  }
  CHECK(residuals.size() == c.M * c.spaces.size());

  std::set<std::string> fixpoints;
  for (const Certificate& cert : find_suite(r, "periodic")->certificates) {
    if (cert.name == "periodic.fixpoint") CHECK(fixpoints.insert(context_value(cert, "head")).second);
  }
  CHECK(fixpoints.count("1,-1,1/2") == 1);
}

TEST_CASE("constant-one table fails the weight conditions") {
  SuiteConfig c = quiet();
  c.weights = "table:[1,1,1];tail=constant";
  const Report r = run_suite(c);
  CHECK_FALSE(r.all_passed());
  const SuiteResult* weights = find_suite(r, "weights");
  REQUIRE(weights != nullptr);
  bool tail_failed = false;
  for (const Certificate& cert : weights->certificates) tail_failed |= cert.name == "weights.tail" && !cert.passed;
  CHECK(tail_failed);
}

TEST_CASE("empty target set keeps only weights and unboundedness") {
  SuiteConfig c = quiet();
  c.M = 0;
  const Report r = run_suite(c);
  CHECK(suite_names(r) == std::vector<std::string>{"weights", "unboundedness"});
  CHECK(r.all_passed());
  CHECK(r.curves.empty());
}

TEST_CASE("configuration errors become failing certificates") {
  for (const auto& [weights, space] : std::vector<std::pair<std::string, std::string>>{
           {"exp:1/2", "l1"}, {"exp:2", "l0"}, {"bogus", "l1"}}) {
    SuiteConfig c = quiet();
    c.weights = weights;
    c.spaces = {space};
    Report r;
    CHECK_NOTHROW(r = run_suite(c));
    CHECK_FALSE(r.all_passed());
    CHECK(r.failed() >= 1);
  }
}

TEST_CASE("json round-trip re-verifies") {
  SuiteConfig c = quiet();
  c.spaces = {"l1", "l2", "c0", "c", "lp:3/2"};
  c.M = 6;
  const Report r = run_suite(c);
  REQUIRE(r.all_passed());
  const std::string json = emit_report(r, ReportFormat::json);
  const std::vector<ParsedCertificate> parsed = parse_report_certificates(json);
  CHECK(parsed.size() == r.total());
  std::size_t i = 0;
  for (const SuiteResult& s : r.suites) {
    for (const Certificate& cert : s.certificates) {
      REQUIRE(i < parsed.size());
      CHECK(parsed[i].suite == s.name);
      CHECK(parsed[i].certificate.lhs == cert.lhs);
      CHECK(parsed[i].certificate.rhs == cert.rhs);
      CHECK(parsed[i].certificate.passed);
      CHECK(recheck(parsed[i].certificate));
      ++i;
    }
  }
}

TEST_CASE("recheck detects tampered verdicts and values") {
  const Report r = run_suite(quiet());
  Certificate cert = find_suite(r, "orbit")->certificates.back();
  REQUIRE(recheck(cert));
  cert.passed = false;
  CHECK_FALSE(recheck(cert));

  Certificate swapped = find_suite(r, "unboundedness")->certificates.front();
  swapped.lhs = "1/3";
  swapped.rhs = "1/2";
  swapped.relation = Relation::ge;
  CHECK_FALSE(recheck(swapped));

  CHECK_THROWS(parse_report_certificates("{\"schema_version\": 99, \"suites\": []}"));
  CHECK_THROWS(parse_report_certificates("not json"));
}

TEST_CASE("json output is deterministic") {
  SuiteConfig c = quiet();
  c.spaces = {"l1", "l2"};
  const std::string a = emit_report(run_suite(c), ReportFormat::json);
  const std::string b = emit_report(run_suite(c), ReportFormat::json);
  CHECK(a == b);
  c.parallel = true;
  CHECK(emit_report(run_suite(c), ReportFormat::json) == a);
}

TEST_CASE("timestamps are optional") {
  SuiteConfig c;
  c.M = 2;
  const Report r = run_suite(c);
  CHECK_FALSE(r.generated_at.empty());
  CHECK(emit_report(r, ReportFormat::json).find("generated_at") != std::string::npos);
  CHECK(emit_report(run_suite(quiet(c)), ReportFormat::json).find("generated_at") == std::string::npos);
}

TEST_CASE("golden report for exp:2, l1, M=5") {
  SuiteConfig c = quiet();
  c.M = 5;
  const std::string json = emit_report(run_suite(c), ReportFormat::json);
  const std::string path = std::string(WSHIFT_GOLDEN_DIR) + "/report_exp2_l1_M5.json";
  if (std::getenv("WSHIFT_UPDATE_GOLDEN") != nullptr) std::ofstream(path) << json;
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
  std::stringstream pinned;
  pinned << in.rdbuf();
  CHECK(pinned.str() == json);
}

TEST_CASE("csv summary has one row per certificate") {
  const Report r = run_suite(quiet());
  const std::vector<std::string> lines = split_lines(emit_report(r, ReportFormat::csv_summary));
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.front() == "suite,index,name,verdict,lhs,relation,rhs,claim,context");
  CHECK(lines.size() == r.total() + 1);
}

TEST_CASE("csv curves are sorted by series, space and independent variable") {
  SuiteConfig c = quiet();
  c.spaces = {"l2", "l1"};
  const Report r = run_suite(c);
  const std::vector<std::string> lines = split_lines(emit_report(r, ReportFormat::csv_curves));
  REQUIRE(lines.size() == r.curves.size() + 1);
  CHECK(lines.front() == "series,space,x,target,bound,norm_hi,bound_approx,norm_hi_approx");
  std::set<std::string> series;
  for (std::size_t i = 0; i < r.curves.size(); ++i) {
    series.insert(r.curves[i].series);
    CHECK(r.curves[i].norm_hi <= r.curves[i].bound);
    if (i == 0) continue;
    const CurvePoint& a = r.curves[i - 1];
    const CurvePoint& b = r.curves[i];
    CHECK(std::tie(a.series, a.space, a.x, a.target) <= std::tie(b.series, b.space, b.x, b.target));
  }
  CHECK(series == std::set<std::string>{"distance", "residual"});
}

TEST_CASE("report formats") {
  CHECK(parse_report_format("json") == ReportFormat::json);
  CHECK(parse_report_format("csv-summary") == ReportFormat::csv_summary);
  CHECK(parse_report_format("csv-curves") == ReportFormat::csv_curves);
  CHECK_THROWS_AS(parse_report_format("xml"), ParseError);
}

TEST_CASE("head syntax") {
  CHECK(parse_head("1,-1,1/2") == std::vector<Scalar>{Scalar(1L), Scalar(-1L), Scalar::parse("1/2")});
  CHECK(parse_head(" 1+i ").size() == 1);
  CHECK_THROWS_AS(parse_head(""), ParseError);
  CHECK_THROWS_AS(parse_head("1,,2"), ParseError);
}
