#include "wshift/constructions.hpp"
#include "wshift/shift.hpp"

namespace wshift {

CoordVector PeriodicPoint::block(std::size_t k) const { return prefix.restrict_to(k * N + 1, k * N + N); }

void extend_periodic_point(const WeightSequence& w, PeriodicPoint& pp, std::size_t K) {
  for (std::size_t k = pp.K + 1; k <= K; ++k) {
    for (std::size_t m = 1; m <= pp.N; ++m) {
      const Scalar& x = pp.head[m - 1];
      if (x.is_zero()) continue;
      // prod_{i=m}^{kN+m-1} w_i has kN factors starting at m.
      pp.prefix.set(k * pp.N + m, x / w.weight_product(m, k * pp.N));
    }
  }
  if (K > pp.K) pp.K = K;
}

PeriodicPoint periodic_point(const WeightSequence& w, std::vector<Scalar> head, std::size_t K) {
  if (head.empty()) throw Error("periodic point needs a period N >= 1");
  PeriodicPoint pp;
  pp.N = head.size();
  pp.head = std::move(head);
  for (std::size_t m = 1; m <= pp.N; ++m) pp.prefix.set(m, pp.head[m - 1]);
  extend_periodic_point(w, pp, K);
  return pp;
}

Certificate periodic_fixpoint_check(const WeightSequence& w, const PeriodicPoint& pp) {
  if (pp.K == 0) throw Error("fixpoint check needs at least one materialized block");
  const std::size_t last = pp.K * pp.N;
  const CoordVector image = apply_power(w, pp.N, pp.prefix).restrict_to(1, last);
  return certify_equal("periodic.fixpoint", "A^N x = x on indices 1..KN", image, pp.prefix.restrict_to(1, last),
                       {{"N", std::to_string(pp.N)}, {"K", std::to_string(pp.K)}});
}

CertificateSet periodic_block_bounds(const WeightSequence& w, const PeriodicPoint& pp) {
  CertificateSet out;
  std::vector<Rational> head_upper;
  Rational head_mass = 0;
  for (const Scalar& x : pp.head) {
    head_upper.push_back(modulus_interval(x, 64).hi);
    head_mass += head_upper.back();
  }
  for (std::size_t k = 1; k <= pp.K; ++k) {
    // Coordinate kN+m is x_m prod_{i=m}^{kN+m-1} w_i^-1; bound each factor from above so that
    // both sides share the same rounding of |x_m|.
    Rational mass = 0;
    for (std::size_t m = 1; m <= pp.N; ++m) {
      if (sgn(head_upper[m - 1]) == 0) continue;
      Rational term = head_upper[m - 1];
      for (Index i = m; i <= k * pp.N + m - 1; ++i) term *= w.reciprocal_upper(i);
      mass += term;
    }
    out.append(certify_compare("periodic.block", "l1(block k) <= (sum_m |x_m|) ub|w_{kN}|^-1",
                               mass, Relation::le, head_mass * w.reciprocal_upper(k * pp.N),
                               {{"N", std::to_string(pp.N)}, {"k", std::to_string(k)}}));
  }
  return out;
}

PeriodicDistance periodic_point_distance(const WeightSequence& w, const CoordVector& y, std::size_t N,
                                         std::size_t K, const std::vector<SpaceSpec>& spaces,
                                         unsigned precision) {
  if (N == 0 || N < y.max_support()) {
    throw Error("periodic distance needs N >= max(1, max_support(y)); got N = " + std::to_string(N));
  }
  std::vector<Scalar> head(N);
  for (const auto& [k, x] : y) head[k - 1] = x;

  PeriodicDistance out{periodic_point(w, std::move(head), K), 0, {}, {}};
  const Rational S = target_metadata(y).S;
  out.bound = sgn(S) == 0 ? Rational(0) : S * w.reciprocal_tail(N);
  const CoordVector difference = out.pp.prefix - y;
  for (const SpaceSpec& space : spaces) {
    NormInterval n = norm(space, difference, precision);
    out.certificates.append(certify_compare("periodic.distance", "||x_K - y||.hi <= S_y T(N)", n.hi,
                                            Relation::le, out.bound,
                                            {{"space", space.name()}, {"N", std::to_string(N)},
                                             {"K", std::to_string(K)}}));
    out.distances.push_back({space, std::move(n)});
  }
  return out;
}

}  // namespace wshift
