#pragma once

#include "wshift/certificate.hpp"
#include "wshift/space.hpp"
#include "wshift/vector.hpp"
#include "wshift/weights.hpp"

#include <cstddef>
#include <optional>

namespace wshift {

// Weighted backward shift (Ax)_k = w_k x_{k+1} and its right inverse
// (Bx)_{k+1} = w_k^-1 x_k, acting on finitely supported vectors. Finitely
// supported vectors lie in every domain D(A^n), so these are total.

CoordVector apply_shift(const WeightSequence& w, const CoordVector& x);

/// (A^n x)_k = [prod_{j=k}^{n+k-1} w_j] x_{k+n}; A^0 = I.
CoordVector apply_power(const WeightSequence& w, std::size_t n, const CoordVector& x);

CoordVector right_inverse(const WeightSequence& w, const CoordVector& x);

/// (B^n x)_{k+n} = [prod_{j=k}^{n+k-1} w_j^-1] x_k; B^0 = I.
CoordVector right_inverse_power(const WeightSequence& w, std::size_t n, const CoordVector& x);

/// The operator A on a concrete space.
class ShiftOperator {
 public:
  ShiftOperator(WeightSequence weights, SpaceSpec space)
      : weights_(std::move(weights)), space_(std::move(space)) {}

  const WeightSequence& weights() const { return weights_; }
  const SpaceSpec& space() const { return space_; }

  CoordVector apply(const CoordVector& x, std::size_t n = 1) const { return apply_power(weights_, n, x); }
  CoordVector right_inverse(const CoordVector& x, std::size_t n = 1) const {
    return right_inverse_power(weights_, n, x);
  }
  NormInterval norm(const CoordVector& x) const { return wshift::norm(space_, x); }

 private:
  WeightSequence weights_;
  SpaceSpec space_;
};

/// ||A^n e_{2n}|| against the floor |w_n|.
struct UnboundednessWitness {
  std::size_t n = 0;
  CoordVector witness;    // e_{2n}
  CoordVector image;      // A^n e_{2n}
  NormInterval value;     // ||A^n e_{2n}||
  ModulusInterval floor;  // |w_n|
  /// Present only when value.lo >= floor.hi.
  std::optional<Certificate> certificate;
};

UnboundednessWitness unboundedness_witness(const WeightSequence& w, std::size_t n, const SpaceSpec& space,
                                           unsigned precision);

}  // namespace wshift
