#pragma once

// Batch kernels over independent instances. Execution::serial is the
// reference loop; Execution::parallel distributes the same per-instance work
// with OpenMP and writes results by index, so both return identical vectors.

#include "wshift/constructions.hpp"
#include "wshift/space.hpp"
#include "wshift/weights.hpp"

#include <cstddef>
#include <vector>

namespace wshift {

enum class Execution { serial, parallel };

/// Orbit visits m = 1..prefix.M.
std::vector<OrbitVisit> orbit_visits(const WeightSequence& w, const HypercyclicPrefix& prefix,
                                     const std::vector<SpaceSpec>& spaces, unsigned precision,
                                     Execution execution);

struct FixpointJob {
  std::vector<Scalar> head;
  std::size_t K = 0;
};

struct FixpointResult {
  PeriodicPoint pp;
  Certificate fixpoint;
  CertificateSet block_bounds;
};

std::vector<FixpointResult> fixpoint_checks(const WeightSequence& w, const std::vector<FixpointJob>& jobs,
                                            Execution execution);

struct DistanceJob {
  CoordVector y;
  std::size_t N = 0;
  std::size_t K = 0;
};

std::vector<PeriodicDistance> periodic_distances(const WeightSequence& w, const std::vector<DistanceJob>& jobs,
                                                 const std::vector<SpaceSpec>& spaces, unsigned precision,
                                                 Execution execution);

std::vector<NormInterval> norms(const SpaceSpec& space, const std::vector<CoordVector>& vectors,
                                unsigned precision, Execution execution);

}  // namespace wshift
