#include "wshift/shift.hpp"

namespace wshift {

CoordVector apply_shift(const WeightSequence& w, const CoordVector& x) {
  CoordVector out;
  for (const auto& [k, value] : x) {
    if (k >= 2) out.set(k - 1, w.weight(k - 1) * value);
  }
  return out;
}

CoordVector apply_power(const WeightSequence& w, std::size_t n, const CoordVector& x) {
  if (n == 0) return x;
  CoordVector out;
  for (const auto& [k, value] : x) {
    if (k > n) out.set(k - n, w.weight_product(k - n, n) * value);
  }
  return out;
}

CoordVector right_inverse(const WeightSequence& w, const CoordVector& x) {
  CoordVector out;
  for (const auto& [k, value] : x) out.set(k + 1, value / w.weight(k));
  return out;
}

CoordVector right_inverse_power(const WeightSequence& w, std::size_t n, const CoordVector& x) {
  if (n == 0) return x;
  CoordVector out;
  for (const auto& [k, value] : x) out.set(k + n, value / w.weight_product(k, n));
  return out;
}

UnboundednessWitness unboundedness_witness(const WeightSequence& w, std::size_t n, const SpaceSpec& space,
                                           unsigned precision) {
  if (n == 0) throw Error("unboundedness witness needs n >= 1");
  UnboundednessWitness out;
  out.n = n;
  out.witness = CoordVector::basis(2 * n);
  out.image = apply_power(w, n, out.witness);
  out.value = norm(space, out.image, precision);
  out.floor = modulus_interval(w.weight(n), precision);
  if (out.value.lo >= out.floor.hi) {
    out.certificate = certify_compare("unbounded.witness", "||A^n e_{2n}||.lo >= |w_n|.hi", out.value.lo,
                                      Relation::ge, out.floor.hi,
                                      {{"weights", w.spec()}, {"space", space.name()}, {"n", std::to_string(n)}});
  }
  return out;
}

}  // namespace wshift
