#include "cli.hpp"

#include "wshift/constructions.hpp"
#include "wshift/enumeration.hpp"
#include "wshift/report.hpp"
#include "wshift/shift.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wshift;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wshift");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "wshift_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("certify reference run") {
  const Result r = run_cli({"certify", "--weights", "exp:2", "--space", "l1", "--M", "10", "--no-timestamp"});
  CHECK(r.code == cli::kExitPass);
  SuiteConfig c;
  c.timestamps = false;
  CHECK(r.out == emit_report(run_suite(c), ReportFormat::json));
}

TEST_CASE("certify is a thin wrapper over run_suite") {
  const Result r = run_cli({"certify", "--weights", "exp:3/2", "--space", "l2,c0", "--M", "4", "--K", "5", "--N",
                            "2,3", "--head", "1,-1", "--n-max", "6", "--format", "csv-summary", "--no-timestamp"});
  CHECK(r.code == cli::kExitPass);
  SuiteConfig c;
  c.weights = "exp:3/2";
  c.spaces = {"l2", "c0"};
  c.M = 4;
  c.K = 5;
  c.periods = {2, 3};
  c.heads = {"1,-1"};
  c.n_max = 6;
  c.timestamps = false;
  CHECK(r.out == emit_report(run_suite(c), ReportFormat::csv_summary));
}

TEST_CASE("certify output is byte-stable and parallel-invariant") {
  const std::vector<std::string> args{"certify", "--space", "l1,l2", "--M", "6", "--no-timestamp"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  CHECK(a.out == b.out);
  std::vector<std::string> parallel = args;
  parallel.push_back("--parallel");
  CHECK(run_cli(parallel).out == a.out);
}

TEST_CASE("failing certificates exit 1") {
  const Result r = run_cli({"certify", "--weights", "table:[1,1,1];tail=constant", "--M", "0", "--no-timestamp"});
  CHECK(r.code == cli::kExitFail);
  CHECK(r.out.find("\"failed\": 0") == std::string::npos);
}

TEST_CASE("schedule subcommand") {
  const Result dense = run_cli({"schedule", "--weights", "exp:2", "--M", "2", "--no-timestamp"});
  CHECK(dense.code == cli::kExitPass);
  CHECK(dense.out.find("n = 1, 3\n") != std::string::npos);

  const Result explicit_targets =
      run_cli({"schedule", "--weights", "exp:2", "--targets", "{1: 1}; {1: 2, 2: -1}", "--no-timestamp"});
  CHECK(explicit_targets.code == cli::kExitPass);
  CHECK(explicit_targets.out.find("n = 1, 4\n") != std::string::npos);
  CHECK(explicit_targets.out.find("PASS\n") != std::string::npos);

  const Schedule s = build_schedule(WeightSequence::parse("exp:3/2"), dense_targets(Field::real, 8), "dense:real");
  std::string expected = "n =";
  for (std::size_t m = 1; m <= 8; ++m) expected += (m == 1 ? " " : ", ") + std::to_string(s.exponent(m));
  CHECK(run_cli({"schedule", "--weights", "exp:3/2", "--M", "8"}).out.find(expected + "\n") != std::string::npos);
}

TEST_CASE("periodic subcommand") {
  const Result r = run_cli({"periodic", "--weights", "exp:2", "--N", "1", "--head", "1", "--K", "4", "--no-timestamp"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.out.find("coordinates: 1, 1/2, 1/8, 1/64, 1/1024\n") != std::string::npos);
  CHECK(r.out.substr(r.out.size() - 5) == "PASS\n");

  const Result three =
      run_cli({"periodic", "--weights", "exp:2", "--head", "1,-1,1/2", "--K", "6", "--space", "l1,l2,c0"});
  CHECK(three.code == cli::kExitPass);
  CHECK(three.out.find("fixpoint (indices 1..18): PASS") != std::string::npos);
}

TEST_CASE("orbit subcommand matches the library") {
  const Result r = run_cli({"orbit", "--weights", "exp:2", "--M", "5", "--m", "2", "--no-timestamp"});
  CHECK(r.code == cli::kExitPass);
  const WeightSequence w = WeightSequence::parse("exp:2");
  const Schedule s = build_schedule(w, dense_targets(Field::real, 5), "dense:real");
  const OrbitVisit v = orbit_visit(w, hypercyclic_prefix(w, s, 5), 2, {SpaceSpec::lp(1)}, 32);
  CHECK(r.out.find("image: " + v.image.to_string() + "\n") != std::string::npos);
  CHECK(r.out.find("bound: " + to_string(v.bound) + "\n") != std::string::npos);
}

TEST_CASE("witness subcommand") {
  const Result r = run_cli({"witness", "--weights", "exp:2", "--n-max", "12", "--no-timestamp"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.out.find("3, [4096, 4096], [8, 8], PASS\n") != std::string::npos);
  const UnboundednessWitness w12 = unboundedness_witness(WeightSequence::parse("exp:2"), 12, SpaceSpec::lp(1), 32);
  CHECK(r.out.find("12, [" + to_string(w12.value.lo) + ", ") != std::string::npos);
}

TEST_CASE("enumerate subcommand") {
  const Result r = run_cli({"enumerate", "--M", "60", "--no-timestamp"});
  CHECK(r.code == cli::kExitPass);
  std::istringstream lines(r.out);
  const DenseEnumeration e;
  std::string line;
  for (std::uint64_t m = 1; m <= 60; ++m) {
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("y^(" + std::to_string(m) + ") = " + e.at(m).to_string() + "  ", 0) == 0);
  }
}

TEST_CASE("timestamp header is the only run-dependent line") {
  const Result with = run_cli({"enumerate", "--M", "3"});
  const Result without = run_cli({"enumerate", "--M", "3", "--no-timestamp"});
  REQUIRE(with.out.rfind("# wshift enumerate ", 0) == 0);
  CHECK(with.out.substr(with.out.find('\n') + 1) == without.out);
}

TEST_CASE("usage errors exit 2 and name the field") {
  struct Case {
    std::vector<std::string> args;
    std::string field;
  };
  const std::vector<Case> cases{
      {{"certify", "--weights", "exp:1/2"}, "--weights"},
      {{"certify", "--weights", "exp:"}, "--weights"},
      {{"certify", "--space", "l0"}, "--space"},
      {{"certify", "--precision", "abc"}, "--precision"},
      {{"certify", "--M", "-1"}, "--M"},
      {{"certify", "--M", "2.5"}, "--M"},
      {{"certify", "--format", "xml"}, "--format"},
      {{"certify", "--field", "quaternion"}, "--field"},
      {{"periodic", "--head", "0.5"}, "--head"},
      {{"periodic", "--head", "1,2,3", "--N", "2"}, "--head"},
      {{"orbit", "--M", "3", "--m", "4"}, "--m"},
      {{"schedule", "--targets", "{0: 1}"}, "--targets"},
      {{"certify", "--config", "/nonexistent/wshift.conf"}, "--config"},
  };
  for (const Case& c : cases) {
    const Result r = run_cli(c.args);
    CAPTURE(c.args.back());
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find(c.field) != std::string::npos);
  }
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"certify", "--no-such-flag"}).code == cli::kExitUsage);
  CHECK(run_cli({"--help"}).code == cli::kExitPass);
}

TEST_CASE("config file composes with flags, flags winning") {
  const auto path = temp_dir() / "suite.conf";
  std::ofstream(path) << "# sweep\nweights = exp:3/2\nspace = l1, l2\nM = 3\nno-timestamp = true\n";

  const Result from_file = run_cli({"certify", "--config", path.string()});
  CHECK(from_file.code == cli::kExitPass);
  SuiteConfig c;
  c.weights = "exp:3/2";
  c.spaces = {"l1", "l2"};
  c.M = 3;
  c.timestamps = false;
  CHECK(from_file.out == emit_report(run_suite(c), ReportFormat::json));

  const Result overridden = run_cli({"certify", "--config", path.string(), "--M", "2"});
  c.M = 2;
  CHECK(overridden.out == emit_report(run_suite(c), ReportFormat::json));

  std::ofstream(path) << "weights = exp:2\nbogus = 1\n";
  const Result bad = run_cli({"certify", "--config", path.string()});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("bogus") != std::string::npos);
}

TEST_CASE("output files resolve against the output directory variable") {
  const auto dir = temp_dir();
  std::filesystem::remove(dir / "enum.txt");
  setenv("WSHIFT_OUTPUT_DIR", dir.c_str(), 1);
  const Result r = run_cli({"enumerate", "--M", "3", "--no-timestamp", "--output", "enum.txt"});
  unsetenv("WSHIFT_OUTPUT_DIR");
  CHECK(r.code == cli::kExitPass);
  CHECK(r.out.empty());
  CHECK(read_file(dir / "enum.txt") == run_cli({"enumerate", "--M", "3", "--no-timestamp"}).out);
}

TEST_CASE("the example config in the repository runs clean") {
  const std::string path = std::string(WSHIFT_GOLDEN_DIR) + "/../../config/reference.conf";
  const Result r = run_cli({"certify", "--config", path});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.out.find("\"generated_at\"") == std::string::npos);
}
