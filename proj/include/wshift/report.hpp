#pragma once

#include "wshift/certificate.hpp"
#include "wshift/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wshift {

/// Parameters of one certification run. Strings use the exact textual
/// syntax of the library (weights "exp:2", spaces "l1", heads "1,-1,1/2").
struct SuiteConfig {
  std::string weights = "exp:2";
  std::vector<std::string> spaces{"l1"};
  unsigned precision = 32;
  std::size_t M = 10;                    // dense targets
  std::size_t K = 12;                    // periodic blocks
  std::vector<std::size_t> periods{1, 2, 3, 4, 5};
  std::vector<std::string> heads;        // extra periodic heads; period = length
  std::size_t n_max = 12;                // unboundedness table
  std::size_t weight_prefix = 64;        // prefix length for weight conditions
  std::size_t search_cap = 100000;
  std::string field = "real";            // dense enumeration field
  bool parallel = false;
  bool timestamps = true;
};

struct SuiteResult {
  std::string name;
  std::vector<Certificate> certificates;
  std::optional<double> wall_ms;
};

/// One plotting sample: series "residual" (x = m) or "distance" (x = N).
struct CurvePoint {
  std::string series;
  std::string space;
  std::size_t x = 0;
  std::size_t target = 0;
  Rational bound;
  Rational norm_hi;
};

struct Report {
  SuiteConfig config;
  std::string generated_at;  // empty when timestamps are off
  std::vector<SuiteResult> suites;
  std::vector<CurvePoint> curves;
  std::vector<std::string> notes;

  std::size_t total() const;
  std::size_t passed() const;
  std::size_t failed() const { return total() - passed(); }
  bool all_passed() const { return failed() == 0; }
};

/// Runs, in order: weights, unboundedness, schedule, hypercyclic, orbit,
/// periodic, distance. Errors become failing certificates. Output is
/// deterministic for a fixed config apart from timing fields.
Report run_suite(const SuiteConfig& config);

enum class ReportFormat { json, csv_summary, csv_curves };

/// "json", "csv-summary", "csv-curves"; throws ParseError otherwise.
ReportFormat parse_report_format(std::string_view name);

std::string emit_report(const Report& report, ReportFormat format);

inline constexpr int kReportSchemaVersion = 1;

/// Certificates of a JSON report, in order, with their suite names.
struct ParsedCertificate {
  std::string suite;
  Certificate certificate;
};

std::vector<ParsedCertificate> parse_report_certificates(std::string_view json);

/// Parses heads "1,-1,1/2".
std::vector<Scalar> parse_head(std::string_view text);

}  // namespace wshift
