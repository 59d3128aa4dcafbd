#pragma once

#include "wshift/scalar.hpp"
#include "wshift/vector.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace wshift {

enum class SpaceKind { lp, c0, c };

/// One of l_p (p >= 1), c_0 or c, each with its standard normalized basis.
/// For c the basis is reindexed from 1: index 1 is the all-ones sequence and
/// index k+1 is the k-th standard unit sequence.
class SpaceSpec {
 public:
  static SpaceSpec lp(Rational p, unsigned precision = 32);
  static SpaceSpec c0(unsigned precision = 32);
  static SpaceSpec c(unsigned precision = 32);

  /// "l1", "l2", "lp:3/2", "c0", "c".
  static SpaceSpec parse(std::string_view text, unsigned precision = 32);

  SpaceKind kind() const { return kind_; }
  const Rational& p() const { return p_; }
  unsigned precision() const { return precision_; }
  std::string name() const;

  friend bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  SpaceSpec(SpaceKind kind, Rational p, unsigned precision)
      : kind_(kind), p_(std::move(p)), precision_(precision) {}

  SpaceKind kind_;
  Rational p_;
  unsigned precision_;
};

using NormInterval = Interval;

/// Certified enclosure of ||v|| in the given space. Width is at most
/// 2^-precision * max(hi, 1); degenerate when the norm is rational and the
/// evaluation path can see it (c0, c, l1 with rational moduli, perfect powers).
NormInterval norm(const SpaceSpec& space, const CoordVector& v, unsigned precision);
inline NormInterval norm(const SpaceSpec& space, const CoordVector& v) {
  return norm(space, v, space.precision());
}

/// Concrete sequence in c represented by a coordinate vector: terms
/// x_1 + x_{j+1} for j = 1..prefix.size(), then constantly x_1.
struct EventuallyConstant {
  std::vector<Scalar> prefix;
  Scalar limit;
  Rational sup_squared;  // exact square of the sup-norm
};

EventuallyConstant c_space_embed(const CoordVector& v);

}  // namespace wshift
