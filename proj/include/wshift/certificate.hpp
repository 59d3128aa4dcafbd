#pragma once

#include "wshift/scalar.hpp"
#include "wshift/vector.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wshift {

/// Comparison recorded in a certificate. `unevaluable` marks a check that
/// could not be carried out (constructor error, divergent tail); such a
/// certificate always fails.
enum class Relation { le, lt, ge, gt, eq, unevaluable };

std::string_view relation_symbol(Relation r);
Relation parse_relation(std::string_view symbol);

using Context = std::vector<std::pair<std::string, std::string>>;

/// A single self-contained check. lhs and rhs are exact strings: rationals,
/// scalars or vector literals. The verdict is re-derivable from them alone.
struct Certificate {
  std::string name;
  std::string claim;
  std::string lhs;
  Relation relation = Relation::unevaluable;
  std::string rhs;
  bool passed = false;
  Context context;
};

Certificate certify_compare(std::string name, std::string claim, const Rational& lhs, Relation rel,
                            const Rational& rhs, Context context = {});
Certificate certify_equal(std::string name, std::string claim, const CoordVector& lhs,
                          const CoordVector& rhs, Context context = {});
Certificate certify_equal(std::string name, std::string claim, const Scalar& lhs, const Scalar& rhs,
                          Context context = {});
Certificate certify_failure(std::string name, std::string claim, std::string reason,
                            Context context = {});

/// Re-evaluates the recorded comparison from the serialized fields and
/// returns whether the stored verdict is consistent with it.
bool recheck(const Certificate& cert);

/// Ordered group of certificates produced by one check.
struct CertificateSet {
  std::vector<Certificate> items;

  bool passed() const;
  /// First failing certificate, or nullptr.
  const Certificate* first_failure() const;
  void append(Certificate c) { items.push_back(std::move(c)); }
  void append(const CertificateSet& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
  }
};

/// Looks up a context value; empty string when absent.
std::string context_value(const Certificate& cert, std::string_view key);

}  // namespace wshift
