#pragma once

#include "wshift/certificate.hpp"
#include "wshift/enumeration.hpp"
#include "wshift/space.hpp"
#include "wshift/vector.hpp"
#include "wshift/weights.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace wshift {

// ---------------------------------------------------------------------------
// Orbit schedule
// ---------------------------------------------------------------------------

struct Target {
  CoordVector y;
  Index k = 0;   // max_support(y)
  Rational S;    // sum of |y_k| (upper endpoint when complex)
};

/// Targets y^(1..M) with their metadata.
std::vector<Target> make_targets(const std::vector<CoordVector>& ys);
std::vector<Target> dense_targets(Field field, std::size_t count);

/// Increasing exponents n_1 < ... < n_M such that for every j < m
///   n_m - n_j >= max(m, k_j)  and
///   prod_{i=1}^{n_m} |w_i| >= [prod_{i=n_m-n_j+1}^{n_m} |w_i|] |w_m| S_m.
struct Schedule {
  std::string source;  // "dense:real", "dense:complex" or "explicit"
  std::vector<Target> targets;
  std::vector<std::size_t> n;  // n[m-1] = n_m
  CertificateSet certificates;

  std::size_t size() const { return n.size(); }
  std::size_t exponent(std::size_t m) const { return n.at(m - 1); }
  const Target& target(std::size_t m) const { return targets.at(m - 1); }
};

/// Greedy minimal schedule: n_1 = 1 and each n_m is the smallest integer
/// above n_{m-1} meeting every pair condition. Throws Error naming m when no
/// admissible n_m lies within `search_cap` steps of n_{m-1}.
Schedule build_schedule(const WeightSequence& w, std::vector<Target> targets, std::string source,
                        std::size_t search_cap = 100000);

/// Re-verifies all pair conditions in both the cancelled and the full
/// product form.
CertificateSet verify_schedule(const WeightSequence& w, const Schedule& schedule);

// ---------------------------------------------------------------------------
// Hypercyclic vector prefixes and orbit visits
// ---------------------------------------------------------------------------

/// x_M = sum_{j=1}^{M} B^{n_j} y^(j) with a rational bound on the omitted
/// tail sum_{j>M} ||B^{n_j} y^(j)||.
struct HypercyclicPrefix {
  std::size_t M = 0;
  Schedule schedule;
  std::vector<CoordVector> summands;  // summands[j-1] = B^{n_j} y^(j)
  CoordVector x;
  Rational tail_bound;
};

HypercyclicPrefix hypercyclic_prefix(const WeightSequence& w, const Schedule& schedule, std::size_t M);

/// Summand decay ||B^{n_j} y^(j)||.hi <= ub|w_j|^-1 for 2 <= j <= M in each
/// space, plus disjointness of consecutive summand supports.
CertificateSet summand_certificates(const WeightSequence& w, const HypercyclicPrefix& prefix,
                                    const std::vector<SpaceSpec>& spaces, unsigned precision);

struct ResidualNorm {
  SpaceSpec space;
  NormInterval norm;
};

struct OrbitVisit {
  std::size_t m = 0;
  CoordVector image;     // A^{n_m} x_M
  CoordVector residual;  // image - y^(m)
  Rational bound;        // sum_{j=m+1}^{M} ub|w_j|^-1 + tail bound
  std::vector<ResidualNorm> residual_norms;
  CertificateSet certificates;
};

/// Visits target m: checks exactly that earlier summands are annihilated,
/// that later ones map to B^{n_j - n_m} y^(j), that the image decomposes as
/// y^(m) plus those terms, and that the residual norm is within the bound.
OrbitVisit orbit_visit(const WeightSequence& w, const HypercyclicPrefix& prefix, std::size_t m,
                       const std::vector<SpaceSpec>& spaces, unsigned precision);

// ---------------------------------------------------------------------------
// Periodic points
// ---------------------------------------------------------------------------

/// Periodic point of period N with head x_1..x_N, materialized through block
/// K: coordinate kN+m is x_m * prod_{i=m}^{kN+m-1} w_i^-1 for k = 0..K.
struct PeriodicPoint {
  std::size_t N = 0;
  std::vector<Scalar> head;
  std::size_t K = 0;
  CoordVector prefix;

  /// Coordinates with indices kN+1 .. kN+N.
  CoordVector block(std::size_t k) const;
};

PeriodicPoint periodic_point(const WeightSequence& w, std::vector<Scalar> head, std::size_t K);

/// Materializes further blocks up to K (no-op when already there).
void extend_periodic_point(const WeightSequence& w, PeriodicPoint& pp, std::size_t K);

/// A^N prefix_K equals prefix_K on indices 1..KN, exactly.
Certificate periodic_fixpoint_check(const WeightSequence& w, const PeriodicPoint& pp);

/// l1 mass of block k <= (sum_m ub|x_m|) * ub|w_{kN}|^-1 for k = 1..K.
CertificateSet periodic_block_bounds(const WeightSequence& w, const PeriodicPoint& pp);

struct PeriodicDistance {
  PeriodicPoint pp;
  Rational bound;  // S_y * T(N)
  std::vector<ResidualNorm> distances;  // ||prefix - y|| per space
  CertificateSet certificates;
};

/// Periodic point of period N whose head is y (padded with zeros), with the
/// certified distance ||pp - y|| <= S_y T(N) on the K-block prefix. Throws
/// Error when N < max_support(y) or N = 0.
PeriodicDistance periodic_point_distance(const WeightSequence& w, const CoordVector& y, std::size_t N,
                                         std::size_t K, const std::vector<SpaceSpec>& spaces,
                                         unsigned precision);

}  // namespace wshift
