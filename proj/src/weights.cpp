#include "wshift/weights.hpp"
#include "text.hpp"

#include <mutex>
#include <shared_mutex>

namespace wshift {

using detail::trim;

namespace {

// Certified lower bound on |s| that is strictly above `floor`. Exact when |s|
// is rational. Requires |s| > floor.
Rational certified_lower(const Scalar& s, const Rational& floor) {
  const Rational sq = modulus_squared(s);
  if (auto exact = exact_sqrt(sq)) return *exact;
  for (unsigned precision = 64;; precision *= 2) {
    Rational lo = root_interval(sq, 2, precision).lo;
    if (lo > floor) return lo;
  }
}

std::string tail_spec(const TailRule& tail) {
  if (const auto* g = std::get_if<GeometricTail>(&tail)) return ";tail=geometric:" + g->ratio.to_string();
  if (std::holds_alternative<ConstantTail>(tail)) return ";tail=constant";
  return "";
}

}  // namespace

struct WeightSequence::Impl {
  WeightKind kind = WeightKind::exponential;
  Scalar lambda;
  Rational lambda_lower;
  std::vector<Scalar> table;
  std::vector<Rational> table_lower;
  TailRule tail;
  Rational ratio_lower;
  std::optional<Rational> declared_bound;

  mutable std::shared_mutex mutex;
  mutable std::vector<Scalar> prefix{Scalar(1L)};
};

WeightSequence WeightSequence::exponential(Scalar lambda) {
  if (modulus_squared(lambda) <= 1) {
    throw Error("exponential weights need |lambda| > 1, got " + lambda.to_string());
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::exponential;
  impl->lambda_lower = certified_lower(lambda, 1);
  impl->lambda = std::move(lambda);
  return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::table(std::vector<Scalar> values, TailRule tail,
                                     std::optional<Rational> declared_bound) {
  if (values.empty()) throw Error("weight table is empty");
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::table;
  for (const Scalar& w : values) {
    if (w.is_zero()) throw Error("weight table contains a zero weight");
    impl->table_lower.push_back(certified_lower(w, 0));
  }
  if (const auto* g = std::get_if<GeometricTail>(&tail)) {
    if (modulus_squared(g->ratio) <= 1) {
      throw Error("geometric tail needs |ratio| > 1, got " + g->ratio.to_string());
    }
    impl->ratio_lower = certified_lower(g->ratio, 1);
  }
  if (declared_bound && *declared_bound < 0) throw Error("declared tail bound must be nonnegative");
  impl->table = std::move(values);
  impl->tail = std::move(tail);
  impl->declared_bound = std::move(declared_bound);
  return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::parse(std::string_view text) {
  if (text.substr(0, 4) == "exp:") return exponential(Scalar::parse(text.substr(4)));
  if (text.substr(0, 6) != "table:") {
    throw ParseError("unknown weight spec '" + std::string(text) + "' (expected exp:... or table:[...])");
  }
  std::string_view rest = text.substr(6);
  if (rest.empty() || rest.front() != '[') throw ParseError("weight table must start with '['");
  const std::size_t close = rest.find(']');
  if (close == std::string_view::npos) throw ParseError("weight table missing ']'");
  std::vector<Scalar> values;
  std::string_view body = rest.substr(1, close - 1);
  while (!body.empty()) {
    const std::size_t comma = body.find(',');
    values.push_back(Scalar::parse(body.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  TailRule tail;
  std::optional<Rational> bound;
  std::string_view options = trim(rest.substr(close + 1));
  while (!options.empty()) {
    if (options.front() != ';') throw ParseError("expected ';' in weight spec options");
    options.remove_prefix(1);
    const std::size_t next = options.find(';');
    std::string_view option = trim(options.substr(0, next));
    options = next == std::string_view::npos ? std::string_view{} : options.substr(next);
    if (option == "tail=constant") {
      tail = ConstantTail{};
    } else if (option.substr(0, 15) == "tail=geometric:") {
      tail = GeometricTail{Scalar::parse(option.substr(15))};
    } else if (option.substr(0, 6) == "bound=") {
      bound = parse_rational(option.substr(6));
    } else {
      throw ParseError("unknown weight option '" + std::string(option) + "'");
    }
  }
  return table(std::move(values), std::move(tail), std::move(bound));
}

std::string WeightSequence::spec() const {
  if (impl_->kind == WeightKind::exponential) return "exp:" + impl_->lambda.to_string();
  std::string out = "table:[";
  for (std::size_t i = 0; i < impl_->table.size(); ++i) {
    if (i != 0) out += ",";
    out += impl_->table[i].to_string();
  }
  out += "]" + tail_spec(impl_->tail);
  if (impl_->declared_bound) out += ";bound=" + to_string(*impl_->declared_bound);
  return out;
}

WeightKind WeightSequence::kind() const { return impl_->kind; }

const Scalar& WeightSequence::lambda() const {
  if (impl_->kind != WeightKind::exponential) throw Error("lambda() on a table weight sequence");
  return impl_->lambda;
}

const std::vector<Scalar>& WeightSequence::table_values() const { return impl_->table; }

const TailRule& WeightSequence::tail_rule() const { return impl_->tail; }

Scalar WeightSequence::weight(Index k) const {
  if (k == 0) throw Error("weights are indexed from 1");
  if (impl_->kind == WeightKind::exponential) return pow(impl_->lambda, k);
  const std::size_t length = impl_->table.size();
  if (k <= length) return impl_->table[k - 1];
  if (const auto* g = std::get_if<GeometricTail>(&impl_->tail)) {
    return impl_->table.back() * pow(g->ratio, k - length);
  }
  if (std::holds_alternative<ConstantTail>(impl_->tail)) return impl_->table.back();
  throw Error("weight " + std::to_string(k) + " lies beyond a table without a tail rule");
}

Scalar WeightSequence::prefix_product(std::size_t n) const {
  {
    std::shared_lock lock(impl_->mutex);
    if (n < impl_->prefix.size()) return impl_->prefix[n];
  }
  std::unique_lock lock(impl_->mutex);
  auto& prefix = impl_->prefix;
  while (prefix.size() <= n) {
    const Index k = prefix.size();
    prefix.push_back(prefix.back() * weight(k));
  }
  return prefix[n];
}

Scalar WeightSequence::weight_product(Index k, std::size_t n) const {
  if (k == 0) throw Error("weights are indexed from 1");
  if (n == 0) return Scalar(1L);
  if (n == 1) return weight(k);
  return prefix_product(k + n - 1) / prefix_product(k - 1);
}

Rational WeightSequence::modulus_lower(Index k) const {
  if (k == 0) throw Error("weights are indexed from 1");
  if (impl_->kind == WeightKind::exponential) return pow(impl_->lambda_lower, k);
  const std::size_t length = impl_->table.size();
  if (k <= length) return impl_->table_lower[k - 1];
  if (std::holds_alternative<GeometricTail>(impl_->tail)) {
    return impl_->table_lower.back() * pow(impl_->ratio_lower, k - length);
  }
  if (std::holds_alternative<ConstantTail>(impl_->tail)) return impl_->table_lower.back();
  throw Error("weight " + std::to_string(k) + " lies beyond a table without a tail rule");
}

Rational WeightSequence::reciprocal_upper(Index k) const {
  Rational out = 1 / modulus_lower(k);
  out.canonicalize();
  return out;
}

Rational WeightSequence::reciprocal_tail(Index n) const {
  if (n == 0) throw Error("reciprocal tail is indexed from 1");
  if (impl_->declared_bound) return *impl_->declared_bound;
  if (impl_->kind == WeightKind::exponential) {
    // sum_{k >= n} l^-k = 1 / (l^(n-1) (l - 1)) with l <= |lambda|.
    const Rational& l = impl_->lambda_lower;
    Rational out = 1 / (pow(l, n - 1) * (l - 1));
    out.canonicalize();
    return out;
  }
  if (std::holds_alternative<std::monostate>(impl_->tail)) {
    throw Error("reciprocal tail of a weight table without a tail rule is not computable");
  }
  if (std::holds_alternative<ConstantTail>(impl_->tail)) {
    throw DivergentTail("constant continuation makes the reciprocal series diverge");
  }
  const std::size_t length = impl_->table.size();
  const Rational& r = impl_->ratio_lower;
  const Rational& last = impl_->table_lower.back();
  Rational out;
  if (n <= length) {
    for (Index k = n; k <= length; ++k) out += reciprocal_upper(k);
    out += 1 / (last * (r - 1));
  } else {
    // sum_{j >= n-L} 1 / (|w_L| r^j) = r^(1 - (n-L)) / (|w_L| (r - 1))
    out = 1 / (last * pow(r, n - length - 1) * (r - 1));
  }
  out.canonicalize();
  return out;
}

CertificateSet check_weight_conditions(const WeightSequence& w, Index prefix_length) {
  if (prefix_length < 2) throw Error("weight-condition prefix must have length >= 2");
  CertificateSet out;
  Context base;
  base.emplace_back("weights", w.spec());
  if (w.proof_by_construction()) base.emplace_back("proof_by_construction", "true");

  auto with = [&base](std::string key, std::string value) {
    Context c = base;
    c.emplace_back(std::move(key), std::move(value));
    return c;
  };

  std::vector<Rational> squares;
  squares.reserve(prefix_length);
  for (Index k = 1; k <= prefix_length; ++k) squares.push_back(modulus_squared(w.weight(k)));

  for (Index k = 1; k <= prefix_length; ++k) {
    out.append(certify_compare("weights.floor", "1 <= |w_k|^2", 1, Relation::le, squares[k - 1],
                               with("k", std::to_string(k))));
    if (k < prefix_length) {
      out.append(certify_compare("weights.monotone", "|w_k|^2 <= |w_{k+1}|^2", squares[k - 1],
                                 Relation::le, squares[k], with("k", std::to_string(k))));
    }
  }

  std::vector<Rational> suffix(prefix_length + 2);
  for (Index k = prefix_length; k >= 1; --k) suffix[k] = suffix[k + 1] + w.reciprocal_upper(k);
  for (Index n = 1; n <= prefix_length; ++n) {
    Rational tail;
    try {
      tail = w.reciprocal_tail(n);
    } catch (const Error& e) {
      out.append(certify_failure("weights.tail", "reciprocal tail bound T(N) is finite", e.what(),
                                 with("N", std::to_string(n))));
      break;
    }
    out.append(certify_compare("weights.tail", "sum_{k=N}^{K} ub|w_k|^-1 <= T(N)", suffix[n],
                               Relation::le, tail, with("N", std::to_string(n))));
  }
  return out;
}

}  // namespace wshift
