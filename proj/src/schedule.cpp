#include "wshift/constructions.hpp"

#include <algorithm>

namespace wshift {

std::vector<Target> make_targets(const std::vector<CoordVector>& ys) {
  std::vector<Target> out;
  out.reserve(ys.size());
  for (const CoordVector& y : ys) {
    TargetMetadata meta = target_metadata(y);
    out.push_back({y, meta.k, std::move(meta.S)});
  }
  return out;
}

std::vector<Target> dense_targets(Field field, std::size_t count) {
  return make_targets(DenseEnumeration(field).first(count));
}

namespace {

// |prod_{i=1}^{t} w_i|^2, cached for the duration of one search.
class ProductSquares {
 public:
  explicit ProductSquares(const WeightSequence& w) : w_(w) {}

  const Rational& operator()(std::size_t t) {
    while (cache_.size() <= t) cache_.push_back(modulus_squared(w_.prefix_product(cache_.size())));
    return cache_[t];
  }

 private:
  const WeightSequence& w_;
  std::vector<Rational> cache_;
};

Context pair_context(std::size_t m, std::size_t j) {
  return {{"m", std::to_string(m)}, {"j", std::to_string(j)}};
}

}  // namespace

Schedule build_schedule(const WeightSequence& w, std::vector<Target> targets, std::string source,
                        std::size_t search_cap) {
  Schedule schedule;
  schedule.source = std::move(source);
  schedule.targets = std::move(targets);
  const std::size_t M = schedule.targets.size();
  ProductSquares product_sq(w);

  for (std::size_t m = 1; m <= M; ++m) {
    if (m == 1) {
      schedule.n.push_back(1);
      continue;
    }
    const Target& tm = schedule.target(m);
    const Rational need = modulus_squared(w.weight(m)) * tm.S * tm.S;
    const std::size_t previous = schedule.n.back();
    std::size_t candidate = previous + 1;
    for (std::size_t j = 1; j < m; ++j) {
      const Target& tj = schedule.target(j);
      candidate = std::max(candidate, schedule.exponent(j) + std::max<std::size_t>(m, tj.k));
    }
    for (;; ++candidate) {
      if (candidate - previous > search_cap) {
        throw Error("schedule search exceeded cap " + std::to_string(search_cap) + " at m = " +
                    std::to_string(m));
      }
      bool ok = true;
      for (std::size_t j = 1; j < m && ok; ++j) {
        ok = product_sq(candidate - schedule.exponent(j)) >= need;
      }
      if (ok) break;
    }
    schedule.n.push_back(candidate);
  }
  schedule.certificates = verify_schedule(w, schedule);
  return schedule;
}

CertificateSet verify_schedule(const WeightSequence& w, const Schedule& schedule) {
  CertificateSet out;
  const std::size_t M = schedule.size();
  for (std::size_t m = 2; m <= M; ++m) {
    const std::size_t nm = schedule.exponent(m);
    const Target& tm = schedule.target(m);
    out.append(certify_compare("schedule.increasing", "n_{m-1} < n_m", schedule.exponent(m - 1), Relation::lt,
                               nm, {{"m", std::to_string(m)}}));
    const Rational wm_sq = modulus_squared(w.weight(m));
    const Rational S_sq = tm.S * tm.S;
    const Rational full_lhs = modulus_squared(w.prefix_product(nm));
    for (std::size_t j = 1; j < m; ++j) {
      const std::size_t nj = schedule.exponent(j);
      const Target& tj = schedule.target(j);
      const std::size_t gap = nm - nj;
      out.append(certify_compare("schedule.gap", "n_m - n_j >= max(m, k_j)", gap, Relation::ge,
                                 std::max<std::size_t>(m, tj.k), pair_context(m, j)));
      out.append(certify_compare("schedule.product",
                                 "|prod_{i=1}^{n_m-n_j} w_i|^2 >= |w_m|^2 S_m^2",
                                 modulus_squared(w.prefix_product(gap)), Relation::ge, wm_sq * S_sq,
                                 pair_context(m, j)));
      out.append(certify_compare(
          "schedule.product_full",
          "|prod_{i=1}^{n_m} w_i|^2 >= |prod_{i=n_m-n_j+1}^{n_m} w_i|^2 |w_m|^2 S_m^2", full_lhs,
          Relation::ge, modulus_squared(w.weight_product(gap + 1, nj)) * wm_sq * S_sq, pair_context(m, j)));
    }
  }
  return out;
}

}  // namespace wshift
