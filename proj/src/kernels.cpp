#include "wshift/kernels.hpp"

#include <exception>
#include <mutex>

namespace wshift {

namespace {

// Runs body(i) for i in [0, count). Exceptions cannot cross an OpenMP region,
// so the first one is captured and rethrown afterwards.
template <typename Body>
void for_each_index(std::size_t count, Execution execution, Body body) {
  if (execution == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<OrbitVisit> orbit_visits(const WeightSequence& w, const HypercyclicPrefix& prefix,
                                     const std::vector<SpaceSpec>& spaces, unsigned precision,
                                     Execution execution) {
  std::vector<OrbitVisit> out(prefix.M);
  for_each_index(prefix.M, execution,
                 [&](std::size_t i) { out[i] = orbit_visit(w, prefix, i + 1, spaces, precision); });
  return out;
}

std::vector<FixpointResult> fixpoint_checks(const WeightSequence& w, const std::vector<FixpointJob>& jobs,
                                            Execution execution) {
  std::vector<FixpointResult> out(jobs.size());
  for_each_index(jobs.size(), execution, [&](std::size_t i) {
    PeriodicPoint pp = periodic_point(w, jobs[i].head, jobs[i].K);
    Certificate fix = periodic_fixpoint_check(w, pp);
    CertificateSet blocks = periodic_block_bounds(w, pp);
    out[i] = FixpointResult{std::move(pp), std::move(fix), std::move(blocks)};
  });
  return out;
}

std::vector<PeriodicDistance> periodic_distances(const WeightSequence& w, const std::vector<DistanceJob>& jobs,
                                                 const std::vector<SpaceSpec>& spaces, unsigned precision,
                                                 Execution execution) {
  std::vector<PeriodicDistance> out(jobs.size());
  for_each_index(jobs.size(), execution, [&](std::size_t i) {
    out[i] = periodic_point_distance(w, jobs[i].y, jobs[i].N, jobs[i].K, spaces, precision);
  });
  return out;
}

std::vector<NormInterval> norms(const SpaceSpec& space, const std::vector<CoordVector>& vectors,
                                unsigned precision, Execution execution) {
  std::vector<NormInterval> out(vectors.size());
  for_each_index(vectors.size(), execution,
                 [&](std::size_t i) { out[i] = norm(space, vectors[i], precision); });
  return out;
}

}  // namespace wshift
