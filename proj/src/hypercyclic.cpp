#include "wshift/constructions.hpp"
#include "wshift/shift.hpp"

namespace wshift {

HypercyclicPrefix hypercyclic_prefix(const WeightSequence& w, const Schedule& schedule, std::size_t M) {
  if (M > schedule.size()) {
    throw Error("hypercyclic prefix M = " + std::to_string(M) + " exceeds schedule length " +
                std::to_string(schedule.size()));
  }
  HypercyclicPrefix out;
  out.M = M;
  out.schedule = schedule;
  out.summands.reserve(M);
  for (std::size_t j = 1; j <= M; ++j) {
    CoordVector summand = right_inverse_power(w, schedule.exponent(j), schedule.target(j).y);
    out.x += summand;
    out.summands.push_back(std::move(summand));
  }
  out.tail_bound = w.reciprocal_tail(M + 1);
  return out;
}

CertificateSet summand_certificates(const WeightSequence& w, const HypercyclicPrefix& prefix,
                                    const std::vector<SpaceSpec>& spaces, unsigned precision) {
  CertificateSet out;
  const Schedule& s = prefix.schedule;
  for (std::size_t j = 1; j < prefix.M; ++j) {
    // supp B^{n_j} y^(j) lies in [n_j + 1, n_j + k_j].
    out.append(certify_compare("hypercyclic.disjoint", "n_j + k_j < n_{j+1} + 1",
                               s.exponent(j) + s.target(j).k, Relation::lt, s.exponent(j + 1) + 1,
                               {{"j", std::to_string(j)}}));
  }
  for (const SpaceSpec& space : spaces) {
    for (std::size_t j = 2; j <= prefix.M; ++j) {
      const NormInterval n = norm(space, prefix.summands[j - 1], precision);
      out.append(certify_compare("hypercyclic.summand", "||B^{n_j} y^(j)||.hi <= ub|w_j|^-1", n.hi,
                                 Relation::le, w.reciprocal_upper(j),
                                 {{"space", space.name()}, {"j", std::to_string(j)}}));
    }
  }
  return out;
}

OrbitVisit orbit_visit(const WeightSequence& w, const HypercyclicPrefix& prefix, std::size_t m,
                       const std::vector<SpaceSpec>& spaces, unsigned precision) {
  if (m == 0 || m > prefix.M) {
    throw Error("orbit visit m = " + std::to_string(m) + " outside 1.." + std::to_string(prefix.M));
  }
  const Schedule& s = prefix.schedule;
  const std::size_t nm = s.exponent(m);
  const CoordVector& ym = s.target(m).y;

  OrbitVisit visit;
  visit.m = m;
  visit.image = apply_power(w, nm, prefix.x);

  Context base{{"m", std::to_string(m)}};
  auto with_j = [&base](std::size_t j) {
    Context c = base;
    c.emplace_back("j", std::to_string(j));
    return c;
  };

  CoordVector decomposition = ym;
  for (std::size_t j = 1; j <= prefix.M; ++j) {
    const CoordVector term = apply_power(w, nm, prefix.summands[j - 1]);
    if (j < m) {
      visit.certificates.append(certify_equal("orbit.annihilate", "A^{n_m} B^{n_j} y^(j) = 0 for j < m", term,
                                              CoordVector{}, with_j(j)));
    } else if (j == m) {
      visit.certificates.append(
          certify_equal("orbit.target", "A^{n_m} B^{n_m} y^(m) = y^(m)", term, ym, with_j(j)));
    } else {
      const CoordVector expected = right_inverse_power(w, s.exponent(j) - nm, s.target(j).y);
      visit.certificates.append(certify_equal("orbit.term", "A^{n_m} B^{n_j} y^(j) = B^{n_j - n_m} y^(j)",
                                              term, expected, with_j(j)));
      decomposition += expected;
    }
  }
  visit.certificates.append(certify_equal("orbit.identity",
                                          "A^{n_m} x_M = y^(m) + sum_{j>m} B^{n_j - n_m} y^(j)",
                                          visit.image, decomposition, base));

  visit.residual = visit.image - ym;
  visit.bound = prefix.tail_bound;
  for (std::size_t j = m + 1; j <= prefix.M; ++j) visit.bound += w.reciprocal_upper(j);

  for (const SpaceSpec& space : spaces) {
    NormInterval n = norm(space, visit.residual, precision);
    Context c = base;
    c.emplace_back("space", space.name());
    visit.certificates.append(certify_compare("orbit.residual",
                                              "||A^{n_m} x_M - y^(m)||.hi <= sum_{j=m+1}^{M} ub|w_j|^-1 + T(M+1)",
                                              n.hi, Relation::le, visit.bound, std::move(c)));
    visit.residual_norms.push_back({space, std::move(n)});
  }
  return visit;
}

}  // namespace wshift
