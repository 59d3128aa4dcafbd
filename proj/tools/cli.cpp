#include "cli.hpp"

#include "wshift/constructions.hpp"
#include "wshift/enumeration.hpp"
#include "wshift/report.hpp"
#include "wshift/shift.hpp"
#include "wshift/space.hpp"
#include "wshift/weights.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace wshift::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Option values by key, as given on the command line or in a config file.
using RawOptions = std::map<std::string, std::vector<std::string>>;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char delimiter) {
  std::vector<std::string> out;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, delimiter)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// key=value lines; '#' starts a comment; repeated keys accumulate.
RawOptions read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot read '" + path + "'");
  RawOptions out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config: line " + std::to_string(number) + " is not key=value");
    }
    out[trim(line.substr(0, eq))].push_back(trim(line.substr(eq + 1)));
  }
  return out;
}

class Options {
 public:
  explicit Options(RawOptions raw) : raw_(std::move(raw)) {}

  bool has(const std::string& key) const { return raw_.count(key) != 0 && !raw_.at(key).empty(); }

  std::optional<std::string> text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& values = raw_.at(key);
    if (values.size() > 1) throw UsageError("--" + key + ": given more than once");
    return values.front();
  }

  std::vector<std::string> list(const std::string& key, char delimiter) const {
    std::vector<std::string> out;
    if (!has(key)) return out;
    for (const std::string& v : raw_.at(key)) {
      for (std::string& item : delimiter ? split(v, delimiter) : std::vector<std::string>{v}) {
        out.push_back(std::move(item));
      }
    }
    return out;
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    auto value = text(key);
    return value ? parse_count(key, *value) : fallback;
  }

  bool flag(const std::string& key) const {
    auto value = text(key);
    if (!value) return false;
    if (*value == "true" || *value == "1") return true;
    if (*value == "false" || *value == "0") return false;
    throw UsageError("--" + key + ": expected true or false, got '" + *value + "'");
  }

  static std::size_t parse_count(const std::string& key, const std::string& value) {
    std::size_t out = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
      throw UsageError("--" + key + ": expected a nonnegative integer, got '" + value + "'");
    }
    return out;
  }

 private:
  RawOptions raw_;
};

// Wraps library parse errors with the offending option name.
template <typename F>
auto field(const std::string& key, F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const Error& e) {
    throw UsageError("--" + key + ": " + e.what());
  }
}

WeightSequence weights_of(const Options& o) {
  const std::string spec = o.text("weights").value_or("exp:2");
  return field("weights", [&] { return WeightSequence::parse(spec); });
}

unsigned precision_of(const Options& o) {
  const std::size_t p = o.count("precision", 32);
  if (p == 0 || p > 4096) throw UsageError("--precision: expected an integer in 1..4096");
  return static_cast<unsigned>(p);
}

std::vector<std::string> space_names_of(const Options& o) {
  std::vector<std::string> names = o.list("space", ',');
  if (names.empty()) names.emplace_back("l1");
  return names;
}

std::vector<SpaceSpec> spaces_of(const Options& o) {
  std::vector<SpaceSpec> out;
  const unsigned precision = precision_of(o);
  for (const std::string& name : space_names_of(o)) {
    out.push_back(field("space", [&] { return SpaceSpec::parse(name, precision); }));
  }
  return out;
}

Field field_of(const Options& o) {
  const std::string name = o.text("field").value_or("real");
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw UsageError("--field: expected real or complex, got '" + name + "'");
}

std::string timestamp_header(const Options& o, const std::string& command) {
  if (o.flag("no-timestamp")) return {};
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return "# wshift " + command + " " + buffer + "\n";
}

std::string verdict(bool passed) { return passed ? "PASS" : "FAIL"; }

std::string certificate_line(const Certificate& c) {
  std::string context;
  for (const auto& [k, v] : c.context) {
    if (k == "weights" || k == "proof_by_construction") continue;
    context += (context.empty() ? "" : ", ") + k + "=" + v;
  }
  return verdict(c.passed) + " " + c.name + (context.empty() ? "" : " [" + context + "]") + ": " + c.lhs + " " +
         std::string(relation_symbol(c.relation)) + " " + c.rhs + "\n";
}

std::string interval_text(const Interval& iv) {
  return "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]";
}

struct Outcome {
  std::string text;
  bool passed = true;
};

Outcome certify_command(const Options& o) {
  SuiteConfig config;
  config.weights = o.text("weights").value_or(config.weights);
  weights_of(o);
  config.spaces = space_names_of(o);
  spaces_of(o);
  config.precision = precision_of(o);
  config.M = o.count("M", config.M);
  config.K = o.count("K", config.K);
  if (o.has("N")) {
    config.periods.clear();
    for (const std::string& n : o.list("N", ',')) {
      const std::size_t N = Options::parse_count("N", n);
      if (N == 0) throw UsageError("--N: periods must be >= 1");
      config.periods.push_back(N);
    }
  }
  config.heads = o.list("head", 0);
  for (const std::string& head : config.heads) field("head", [&] { return parse_head(head); });
  config.n_max = o.count("n-max", config.n_max);
  config.weight_prefix = o.count("prefix", config.weight_prefix);
  if (config.weight_prefix < 2) throw UsageError("--prefix: must be >= 2");
  config.search_cap = o.count("search-cap", config.search_cap);
  config.field = o.text("field").value_or("real");
  field_of(o);
  config.parallel = o.flag("parallel");
  config.timestamps = !o.flag("no-timestamp");
  const ReportFormat format =
      field("format", [&] { return parse_report_format(o.text("format").value_or("json")); });

  const Report report = run_suite(config);
  return {emit_report(report, format), report.all_passed()};
}

std::string dense_source(const Options& o) {
  return field_of(o) == Field::real ? "dense:real" : "dense:complex";
}

Outcome orbit_command(const Options& o) {
  const WeightSequence w = weights_of(o);
  const std::vector<SpaceSpec> spaces = spaces_of(o);
  const unsigned precision = precision_of(o);
  const std::size_t M = o.count("M", 10);
  const std::size_t m = o.count("m", 1);
  if (M == 0) throw UsageError("--M: must be >= 1");
  if (m == 0 || m > M) throw UsageError("--m: must lie in 1..M");

  const Schedule schedule =
      build_schedule(w, dense_targets(field_of(o), M), dense_source(o), o.count("search-cap", 100000));
  const HypercyclicPrefix prefix = hypercyclic_prefix(w, schedule, M);
  const OrbitVisit visit = orbit_visit(w, prefix, m, spaces, precision);

  std::ostringstream os;
  os << "weights: " << w.spec() << "\n";
  os << "m: " << m << "\n";
  os << "n_m: " << schedule.exponent(m) << "\n";
  os << "target: " << schedule.target(m).y.to_string() << "\n";
  os << "image: " << visit.image.to_string() << "\n";
  os << "residual: " << visit.residual.to_string() << "\n";
  os << "bound: " << to_string(visit.bound) << "\n";
  for (const ResidualNorm& r : visit.residual_norms) {
    os << "residual norm [" << r.space.name() << "]: " << interval_text(r.norm) << "\n";
  }
  for (const Certificate& c : visit.certificates.items) {
    if (!c.passed) os << certificate_line(c);
  }
  const bool passed = visit.certificates.passed();
  os << "certificates: " << visit.certificates.items.size() << ", " << verdict(passed) << "\n";
  return {os.str(), passed};
}

Outcome periodic_command(const Options& o) {
  const WeightSequence w = weights_of(o);
  const std::vector<SpaceSpec> spaces = spaces_of(o);
  const unsigned precision = precision_of(o);
  const std::size_t K = o.count("K", 12);
  if (K == 0) throw UsageError("--K: must be >= 1");
  std::vector<Scalar> head;
  if (auto text = o.text("head")) head = field("head", [&] { return parse_head(*text); });
  std::size_t N = o.count("N", head.empty() ? 1 : head.size());
  if (N == 0) throw UsageError("--N: must be >= 1");
  if (head.empty()) head.assign(N, Scalar(1L));
  if (head.size() > N) throw UsageError("--head: has more than N entries");
  head.resize(N);

  CoordVector y;
  for (std::size_t m = 1; m <= N; ++m) y.set(m, head[m - 1]);
  const PeriodicDistance distance = periodic_point_distance(w, y, N, K, spaces, precision);
  const PeriodicPoint& pp = distance.pp;
  const Certificate fix = periodic_fixpoint_check(w, pp);
  const CertificateSet blocks = periodic_block_bounds(w, pp);

  std::ostringstream os;
  os << "weights: " << w.spec() << "\n";
  os << "N: " << N << "\n";
  os << "K: " << K << "\n";
  os << "coordinates:";
  for (std::size_t i = 1; i <= (K + 1) * N; ++i) os << (i == 1 ? " " : ", ") << pp.prefix.coordinate(i).to_string();
  os << "\n";
  os << "fixpoint (indices 1.." << K * N << "): " << verdict(fix.passed) << "\n";
  os << "block bounds: " << verdict(blocks.passed()) << "\n";
  os << "distance bound: " << to_string(distance.bound) << "\n";
  for (std::size_t i = 0; i < distance.distances.size(); ++i) {
    os << "distance [" << distance.distances[i].space.name() << "]: " << interval_text(distance.distances[i].norm)
       << " " << verdict(distance.certificates.items[i].passed) << "\n";
  }
  const bool passed = fix.passed && blocks.passed() && distance.certificates.passed();
  os << verdict(passed) << "\n";
  return {os.str(), passed};
}

Outcome schedule_command(const Options& o) {
  const WeightSequence w = weights_of(o);
  std::vector<Target> targets;
  std::string source;
  if (auto text = o.text("targets")) {
    std::vector<CoordVector> ys;
    for (const std::string& literal : split(*text, ';')) {
      ys.push_back(field("targets", [&] { return CoordVector::parse(literal); }));
    }
    const std::size_t M = o.count("M", ys.size());
    if (M > ys.size()) throw UsageError("--M: more targets requested than given in --targets");
    ys.resize(M);
    targets = make_targets(ys);
    source = "explicit";
  } else {
    targets = dense_targets(field_of(o), o.count("M", 10));
    source = dense_source(o);
  }
  const Schedule schedule = build_schedule(w, std::move(targets), source, o.count("search-cap", 100000));

  std::ostringstream os;
  os << "weights: " << w.spec() << "\n";
  os << "targets: " << source << "\n";
  for (std::size_t m = 1; m <= schedule.size(); ++m) {
    const Target& t = schedule.target(m);
    os << "y^(" << m << ") = " << t.y.to_string() << "  k=" << t.k << " S=" << to_string(t.S) << "\n";
  }
  os << "n =";
  for (std::size_t m = 1; m <= schedule.size(); ++m) os << (m == 1 ? " " : ", ") << schedule.exponent(m);
  os << "\n";
  for (const Certificate& c : schedule.certificates.items) os << certificate_line(c);
  const bool passed = schedule.certificates.passed();
  os << verdict(passed) << "\n";
  return {os.str(), passed};
}

Outcome witness_command(const Options& o) {
  const WeightSequence w = weights_of(o);
  const SpaceSpec space = spaces_of(o).front();
  const unsigned precision = precision_of(o);
  const std::size_t n_max = o.count("n-max", 12);
  std::ostringstream os;
  os << "weights: " << w.spec() << "\n";
  os << "space: " << space.name() << "\n";
  os << "n, ||A^n e_2n||, |w_n|, verdict\n";
  bool passed = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const UnboundednessWitness witness = unboundedness_witness(w, n, space, precision);
    const bool ok = witness.certificate.has_value();
    passed = passed && ok;
    os << n << ", " << interval_text(witness.value) << ", " << interval_text(witness.floor) << ", " << verdict(ok)
       << "\n";
  }
  return {os.str(), passed};
}

Outcome enumerate_command(const Options& o) {
  const DenseEnumeration enumeration(field_of(o));
  const std::size_t M = o.count("M", 10);
  std::ostringstream os;
  for (std::size_t m = 1; m <= M; ++m) {
    const CoordVector y = enumeration.at(m);
    const TargetMetadata meta = target_metadata(y);
    os << "y^(" << m << ") = " << y.to_string() << "  k=" << meta.k << " S=" << to_string(meta.S) << "\n";
  }
  return {os.str(), true};
}

void write_output(const Options& o, const std::string& text, std::ostream& out) {
  auto path = o.text("output");
  if (!path) {
    out << text;
    return;
  }
  std::filesystem::path target(*path);
  if (target.is_relative()) {
    if (const char* dir = std::getenv("WSHIFT_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      target = std::filesystem::path(dir) / target;
    }
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw UsageError("--output: cannot write '" + target.string() + "'");
  file << text;
}

struct Command {
  const char* name;
  const char* description;
  std::vector<std::string> keys;
  Outcome (*run)(const Options&);
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"certify", "Run the full certification suite and emit a report",
       {"weights", "space", "precision", "M", "K", "N", "head", "n-max", "prefix", "search-cap", "field", "format",
        "parallel"},
       certify_command},
      {"orbit", "Visit one enumerated target along the hypercyclic orbit",
       {"weights", "space", "precision", "M", "m", "field", "search-cap"},
       orbit_command},
      {"periodic", "Build a periodic point, check A^N x = x and its distance bound",
       {"weights", "space", "precision", "N", "head", "K"},
       periodic_command},
      {"schedule", "Print the greedy orbit schedule with its certificates",
       {"weights", "M", "targets", "field", "search-cap"},
       schedule_command},
      {"witness", "Tabulate the unboundedness witnesses ||A^n e_2n||",
       {"weights", "space", "precision", "n-max"},
       witness_command},
      {"enumerate", "Print the first M elements of the dense enumeration", {"M", "field"}, enumerate_command},
  };
  return table;
}

const std::map<std::string, std::string>& option_help() {
  static const std::map<std::string, std::string> help{
      {"weights", "Weight sequence, e.g. exp:2, exp:1+1*i, table:[2,3,5];tail=geometric:2"},
      {"space", "Space(s): l1, l2, lp:P, c0, c (comma-separated or repeated)"},
      {"precision", "Interval precision in bits (default 32)"},
      {"M", "Number of dense targets (default 10)"},
      {"K", "Materialized periodic blocks (default 12)"},
      {"N", "Period(s) (certify: list, default 1,2,3,4,5)"},
      {"head", "Periodic head x_1,...,x_N (certify: repeatable)"},
      {"n-max", "Largest n in the unboundedness table (default 12)"},
      {"prefix", "Prefix length for weight-condition certification (default 64)"},
      {"search-cap", "Schedule search cap (default 100000)"},
      {"field", "Dense enumeration field: real or complex (default real)"},
      {"format", "Report format: json, csv-summary, csv-curves (default json)"},
      {"m", "Target index to visit (default 1)"},
      {"targets", "Explicit schedule targets, ';'-separated vector literals"},
  };
  return help;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact certification of chaotic weighted backward shifts", "wshift"};
  app.require_subcommand(1);

  // Values land in `storage` keyed by option name; std::map keeps addresses stable.
  std::map<std::string, std::map<std::string, std::vector<std::string>>> storage;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, std::string> outputs;
  std::vector<std::pair<const Command*, CLI::App*>> subcommands;

  for (const Command& command : commands()) {
    CLI::App* sub = app.add_subcommand(command.name, command.description);
    auto& values = storage[command.name];
    for (const std::string& key : command.keys) {
      if (key == "parallel") {
        sub->add_flag("--parallel", flags[command.name]["parallel"], "Run independent checks with OpenMP");
        continue;
      }
      sub->add_option("--" + key, values[key], option_help().at(key))->allow_extra_args(false);
    }
    sub->add_option("--config", config_paths[command.name], "key=value config file (flags take precedence)");
    sub->add_option("--output", outputs[command.name], "Write output to a file (relative to $WSHIFT_OUTPUT_DIR)");
    sub->add_flag("--no-timestamp", flags[command.name]["no-timestamp"], "Omit timestamps and timings");
    subcommands.emplace_back(&command, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  for (const auto& [command, sub] : subcommands) {
    if (!sub->parsed()) continue;
    try {
      RawOptions raw;
      const std::string name = command->name;
      if (!config_paths[name].empty()) {
        for (auto& [key, values] : read_config_file(config_paths[name])) {
          const bool known = key == "output" || key == "no-timestamp" ||
                             std::find(command->keys.begin(), command->keys.end(), key) != command->keys.end();
          if (!known) throw UsageError("--config: unknown key '" + key + "' for " + name);
          raw[key] = values;
        }
      }
      for (const auto& [key, values] : storage[name]) {
        if (sub->count("--" + key) > 0) raw[key] = values;
      }
      for (const auto& [key, set] : flags[name]) {
        if (sub->count("--" + key) > 0) raw[key] = {set ? "true" : "false"};
      }
      if (sub->count("--output") > 0) raw["output"] = {outputs[name]};

      const Options options(std::move(raw));
      Outcome outcome = command->run(options);
      std::string text = outcome.text;
      if (name != "certify") text = timestamp_header(options, name) + text;
      write_output(options, text, out);
      return outcome.passed ? kExitPass : kExitFail;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitFail;
    }
  }
  return kExitUsage;
}

}  // namespace wshift::cli
