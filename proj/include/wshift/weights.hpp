#pragma once

#include "wshift/certificate.hpp"
#include "wshift/scalar.hpp"
#include "wshift/vector.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wshift {

class DivergentTail : public Error {
 public:
  using Error::Error;
};

/// Continuation w_{L+j} = w_L * ratio^j past a table of length L; |ratio| > 1.
struct GeometricTail {
  Scalar ratio;
};

/// Continuation w_{L+j} = w_L; the reciprocal series diverges.
struct ConstantTail {};

using TailRule = std::variant<std::monostate, GeometricTail, ConstantTail>;

enum class WeightKind { exponential, table };

/// Weight sequence (w_k)_{k >= 1} with exact values, memoized prefix
/// products, certified reciprocal upper bounds and a computable reciprocal
/// tail bound T(N) >= sum_{k >= N} |w_k|^-1.
///
/// Copies share the product cache, which is internally synchronized.
class WeightSequence {
 public:
  /// w_k = lambda^k. Throws Error unless |lambda| > 1.
  static WeightSequence exponential(Scalar lambda);

  /// Explicit prefix with a continuation rule. `declared_bound`, when given,
  /// replaces the computed tail bound with a constant claim that
  /// certification then has to confirm. Throws Error on an empty table,
  /// a zero weight, or a geometric ratio with modulus <= 1.
  static WeightSequence table(std::vector<Scalar> values, TailRule tail = {},
                              std::optional<Rational> declared_bound = {});

  /// "exp:2", "exp:1+1*i", "table:[2,3,5];tail=geometric:2[;bound=1]".
  static WeightSequence parse(std::string_view text);

  /// Canonical spec string; parse(spec()) reproduces the sequence.
  std::string spec() const;

  WeightKind kind() const;
  /// Exponential kind only.
  const Scalar& lambda() const;
  const std::vector<Scalar>& table_values() const;
  const TailRule& tail_rule() const;
  /// True for the exponential kind: monotonicity and summability hold for
  /// every k by construction, not only on a checked prefix.
  bool proof_by_construction() const { return kind() == WeightKind::exponential; }

  /// Exact w_k, k >= 1.
  Scalar weight(Index k) const;

  /// prod_{j=k}^{k+n-1} w_j, exact; 1 for n = 0.
  Scalar weight_product(Index k, std::size_t n) const;

  /// prod_{j=1}^{n} w_j, memoized.
  Scalar prefix_product(std::size_t n) const;

  /// Certified rational lower bound on |w_k|, exact when |w_k| is rational.
  Rational modulus_lower(Index k) const;

  /// Certified upper bound on |w_k|^-1 (= 1 / modulus_lower(k)).
  Rational reciprocal_upper(Index k) const;

  /// T(N). Throws Error for a table without a tail rule and DivergentTail for
  /// a constant continuation (unless a bound was declared).
  Rational reciprocal_tail(Index n) const;

 private:
  struct Impl;
  explicit WeightSequence(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

/// Prefix certification of 1 <= |w_k| <= |w_{k+1}| (k < K) and of
/// sum_{k=N}^{K} ub|w_k|^-1 <= T(N) (N <= K). Every compared pair is recorded;
/// a failure names the first offending index in its context.
CertificateSet check_weight_conditions(const WeightSequence& w, Index prefix_length);

}  // namespace wshift
