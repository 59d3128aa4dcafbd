#include "wshift/report.hpp"

#include "wshift/constructions.hpp"
#include "wshift/kernels.hpp"
#include "wshift/shift.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <sstream>
#include <tuple>

namespace wshift {

using ordered_json = nlohmann::ordered_json;

std::size_t Report::total() const {
  std::size_t n = 0;
  for (const SuiteResult& s : suites) n += s.certificates.size();
  return n;
}

std::size_t Report::passed() const {
  std::size_t n = 0;
  for (const SuiteResult& s : suites) {
    n += static_cast<std::size_t>(
        std::count_if(s.certificates.begin(), s.certificates.end(), [](const Certificate& c) { return c.passed; }));
  }
  return n;
}

std::vector<Scalar> parse_head(std::string_view text) {
  std::vector<Scalar> out;
  while (true) {
    const std::size_t comma = text.find(',');
    out.push_back(Scalar::parse(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

Field parse_field(const std::string& name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw ParseError("unknown field '" + name + "' (expected real or complex)");
}

// Runs one suite, timing it and turning any error into a failing certificate.
void run_timed(Report& report, const std::string& name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult suite;
  suite.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(suite);
  } catch (const std::exception& e) {
    suite.certificates.push_back(certify_failure(name + ".error", "suite completes without error", e.what()));
  }
  const auto stop = std::chrono::steady_clock::now();
  if (report.config.timestamps) {
    suite.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  }
  report.suites.push_back(std::move(suite));
}

void append(SuiteResult& suite, const CertificateSet& set) {
  suite.certificates.insert(suite.certificates.end(), set.items.begin(), set.items.end());
}

std::vector<Scalar> padded(const CoordVector& y, std::size_t N) {
  std::vector<Scalar> head(N);
  for (const auto& [k, x] : y) head[k - 1] = x;
  return head;
}

}  // namespace

Report run_suite(const SuiteConfig& config) {
  Report report;
  report.config = config;
  if (config.timestamps) report.generated_at = utc_timestamp();
  const Execution execution = config.parallel ? Execution::parallel : Execution::serial;

  std::optional<WeightSequence> weights;
  std::vector<SpaceSpec> spaces;
  std::vector<Certificate> config_errors;
  Field field = Field::real;
  try {
    weights = WeightSequence::parse(config.weights);
  } catch (const Error& e) {
    config_errors.push_back(certify_failure("config.weights", "weight spec is valid", e.what(),
                                            {{"weights", config.weights}}));
  }
  for (const std::string& name : config.spaces) {
    try {
      spaces.push_back(SpaceSpec::parse(name, config.precision));
    } catch (const Error& e) {
      config_errors.push_back(certify_failure("config.space", "space spec is valid", e.what(), {{"space", name}}));
    }
  }
  if (spaces.empty() && config_errors.empty()) {
    config_errors.push_back(certify_failure("config.space", "at least one space is configured", "no spaces"));
  }
  try {
    field = parse_field(config.field);
  } catch (const Error& e) {
    config_errors.push_back(certify_failure("config.field", "field is valid", e.what()));
  }
  if (!config_errors.empty()) {
    report.suites.push_back({"config", std::move(config_errors), std::nullopt});
    return report;
  }
  const WeightSequence& w = *weights;
  const unsigned precision = config.precision;

  run_timed(report, "weights", [&](SuiteResult& suite) {
    append(suite, check_weight_conditions(w, config.weight_prefix));
  });

  run_timed(report, "unboundedness", [&](SuiteResult& suite) {
    for (std::size_t n = 1; n <= config.n_max; ++n) {
      const UnboundednessWitness witness = unboundedness_witness(w, n, spaces.front(), precision);
      suite.certificates.push_back(certify_compare(
          "unbounded.witness", "||A^n e_{2n}||.lo >= |w_n|.hi", witness.value.lo, Relation::ge, witness.floor.hi,
          {{"space", spaces.front().name()}, {"n", std::to_string(n)}}));
    }
  });

  if (config.M == 0 && config.heads.empty()) return report;

  const std::vector<Target> targets = dense_targets(field, config.M);
  std::optional<Schedule> schedule;
  std::optional<HypercyclicPrefix> prefix;

  if (config.M > 0) {
    run_timed(report, "schedule", [&](SuiteResult& suite) {
      schedule = build_schedule(w, targets, "dense:" + config.field, config.search_cap);
      append(suite, schedule->certificates);
      std::string exponents;
      for (std::size_t m = 1; m <= schedule->size(); ++m) {
        exponents += (m == 1 ? "" : ", ") + std::to_string(schedule->exponent(m));
      }
      report.notes.push_back("schedule n = " + exponents);
    });

    run_timed(report, "hypercyclic", [&](SuiteResult& suite) {
      if (!schedule) throw Error("schedule unavailable");
      prefix = hypercyclic_prefix(w, *schedule, config.M);
      append(suite, summand_certificates(w, *prefix, spaces, precision));
      for (const SpaceSpec& space : spaces) {
        const NormInterval first = norm(space, prefix->summands.front(), precision);
        report.notes.push_back("summand j = 1 in " + space.name() + ": ||B^{n_1} y^(1)||.hi = " +
                               to_string(first.hi) + ", ub|w_1|^-1 = " + to_string(w.reciprocal_upper(1)));
      }
    });

    run_timed(report, "orbit", [&](SuiteResult& suite) {
      if (!prefix) throw Error("hypercyclic prefix unavailable");
      for (const OrbitVisit& visit : orbit_visits(w, *prefix, spaces, precision, execution)) {
        append(suite, visit.certificates);
        for (const ResidualNorm& r : visit.residual_norms) {
          report.curves.push_back({"residual", r.space.name(), visit.m, visit.m, visit.bound, r.norm.hi});
        }
      }
    });
  }

  run_timed(report, "periodic", [&](SuiteResult& suite) {
    std::vector<FixpointJob> jobs;
    for (std::size_t N : config.periods) {
      if (N == 0) throw Error("period N must be >= 1");
      for (const Target& t : targets) {
        if (t.k <= N) jobs.push_back({padded(t.y, N), config.K});
      }
    }
    for (const std::string& head : config.heads) jobs.push_back({parse_head(head), config.K});
    for (FixpointResult& result : fixpoint_checks(w, jobs, execution)) {
      std::string head;
      for (const Scalar& x : result.pp.head) head += (head.empty() ? "" : ",") + x.to_string();
      result.fixpoint.context.emplace_back("head", head);
      suite.certificates.push_back(std::move(result.fixpoint));
      for (Certificate& c : result.block_bounds.items) {
        c.context.emplace_back("head", head);
        suite.certificates.push_back(std::move(c));
      }
    }
  });

  if (config.M > 0) {
    run_timed(report, "distance", [&](SuiteResult& suite) {
      std::vector<DistanceJob> jobs;
      std::vector<std::size_t> job_target;
      for (std::size_t m = 1; m <= targets.size(); ++m) {
        for (std::size_t N : config.periods) {
          if (N >= std::max<std::size_t>(1, targets[m - 1].k)) {
            jobs.push_back({targets[m - 1].y, N, config.K});
            job_target.push_back(m);
          }
        }
      }
      const auto results = periodic_distances(w, jobs, spaces, precision, execution);
      for (std::size_t i = 0; i < results.size(); ++i) {
        append(suite, results[i].certificates);
        for (const ResidualNorm& d : results[i].distances) {
          report.curves.push_back({"distance", d.space.name(), jobs[i].N, job_target[i], results[i].bound, d.norm.hi});
        }
      }
    });
  }

  std::stable_sort(report.curves.begin(), report.curves.end(), [](const CurvePoint& a, const CurvePoint& b) {
    return std::tie(a.series, a.space, a.x, a.target) < std::tie(b.series, b.space, b.x, b.target);
  });
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv-summary") return ReportFormat::csv_summary;
  if (name == "csv-curves") return ReportFormat::csv_curves;
  throw ParseError("unknown report format '" + std::string(name) + "' (expected json, csv-summary or csv-curves)");
}

namespace {

ordered_json config_json(const SuiteConfig& c) {
  ordered_json j;
  j["weights"] = c.weights;
  j["spaces"] = c.spaces;
  j["precision"] = c.precision;
  j["M"] = c.M;
  j["K"] = c.K;
  j["periods"] = c.periods;
  j["heads"] = c.heads;
  j["n_max"] = c.n_max;
  j["weight_prefix"] = c.weight_prefix;
  j["search_cap"] = c.search_cap;
  j["field"] = c.field;
  return j;
}

ordered_json certificate_json(const Certificate& c) {
  ordered_json j;
  j["name"] = c.name;
  j["claim"] = c.claim;
  j["lhs"] = c.lhs;
  j["relation"] = std::string(relation_symbol(c.relation));
  j["rhs"] = c.rhs;
  j["verdict"] = c.passed ? "pass" : "fail";
  ordered_json context = ordered_json::object();
  for (const auto& [k, v] : c.context) context[k] = v;
  j["context"] = std::move(context);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string context_text(const Context& context) {
  std::string out;
  for (const auto& [k, v] : context) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::string approx(const Rational& q) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << q.get_d();
  return os.str();
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      ordered_json j;
      j["schema"] = "wshift-report";
      j["schema_version"] = kReportSchemaVersion;
      if (!report.generated_at.empty()) j["generated_at"] = report.generated_at;
      j["config"] = config_json(report.config);
      j["summary"] = {{"total", report.total()}, {"passed", report.passed()}, {"failed", report.failed()}};
      ordered_json suites = ordered_json::array();
      for (const SuiteResult& s : report.suites) {
        ordered_json js;
        js["name"] = s.name;
        if (s.wall_ms) js["wall_ms"] = *s.wall_ms;
        ordered_json certs = ordered_json::array();
        for (const Certificate& c : s.certificates) certs.push_back(certificate_json(c));
        js["certificates"] = std::move(certs);
        suites.push_back(std::move(js));
      }
      j["suites"] = std::move(suites);
      ordered_json curves = ordered_json::array();
      for (const CurvePoint& p : report.curves) {
        curves.push_back({{"series", p.series},
                          {"space", p.space},
                          {"x", p.x},
                          {"target", p.target},
                          {"bound", to_string(p.bound)},
                          {"norm_hi", to_string(p.norm_hi)}});
      }
      j["curves"] = std::move(curves);
      j["notes"] = report.notes;
      return j.dump(2) + "\n";
    }
    case ReportFormat::csv_summary: {
      std::string out = "suite,index,name,verdict,lhs,relation,rhs,claim,context\n";
      for (const SuiteResult& s : report.suites) {
        for (std::size_t i = 0; i < s.certificates.size(); ++i) {
          const Certificate& c = s.certificates[i];
          out += csv_field(s.name) + "," + std::to_string(i + 1) + "," + csv_field(c.name) + "," +
                 (c.passed ? "pass" : "fail") + "," + csv_field(c.lhs) + "," +
                 csv_field(std::string(relation_symbol(c.relation))) + "," + csv_field(c.rhs) + "," + csv_field(c.claim) + "," + csv_field(context_text(c.context)) + "\n";
        }
      }
      return out;
    }
    case ReportFormat::csv_curves: {
      std::string out = "series,space,x,target,bound,norm_hi,bound_approx,norm_hi_approx\n";
      for (const CurvePoint& p : report.curves) {
        out += p.series + "," + p.space + "," + std::to_string(p.x) + "," + std::to_string(p.target) + "," +
               to_string(p.bound) + "," + to_string(p.norm_hi) + "," + approx(p.bound) + "," + approx(p.norm_hi) +
               "\n";
      }
      return out;
    }
  }
  throw Error("unknown report format");
}

std::vector<ParsedCertificate> parse_report_certificates(std::string_view json) {
  std::vector<ParsedCertificate> out;
  try {
    const ordered_json j = ordered_json::parse(json);
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw ParseError("unsupported report schema version");
    }
    for (const auto& suite : j.at("suites")) {
      const std::string name = suite.at("name").get<std::string>();
      for (const auto& c : suite.at("certificates")) {
        Certificate cert;
        cert.name = c.at("name").get<std::string>();
        cert.claim = c.at("claim").get<std::string>();
        cert.lhs = c.at("lhs").get<std::string>();
        cert.relation = parse_relation(c.at("relation").get<std::string>());
        cert.rhs = c.at("rhs").get<std::string>();
        cert.passed = c.at("verdict").get<std::string>() == "pass";
        for (const auto& [k, v] : c.at("context").items()) cert.context.emplace_back(k, v.get<std::string>());
        out.push_back({name, std::move(cert)});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
  return out;
}

}  // namespace wshift
