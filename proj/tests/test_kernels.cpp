#include "generators.hpp"

#include "wshift/kernels.hpp"

#include <doctest.h>

#include <omp.h>

using namespace wshift;
using wshift::testing::Gen;

namespace {

std::string flatten(const CertificateSet& set) {
  std::string out;
  for (const Certificate& c : set.items) {
    out += c.name + "|" + c.lhs + "|" + std::string(relation_symbol(c.relation)) + "|" + c.rhs + "|" +
           (c.passed ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<SpaceSpec> spaces() { return {SpaceSpec::lp(1), SpaceSpec::lp(2), SpaceSpec::c0()}; }

}  // namespace

TEST_CASE("orbit visits: serial and parallel agree") {
  omp_set_num_threads(4);
  const WeightSequence w = WeightSequence::parse("exp:3/2");
  const Schedule s = build_schedule(w, dense_targets(Field::real, 10), "dense:real");
  const HypercyclicPrefix p = hypercyclic_prefix(w, s, 10);
  const auto serial = orbit_visits(w, p, spaces(), 32, Execution::serial);
  const auto parallel = orbit_visits(w, p, spaces(), 32, Execution::parallel);
  REQUIRE(serial.size() == 10);
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].m == i + 1);
    CHECK(parallel[i].m == serial[i].m);
    CHECK(parallel[i].image == serial[i].image);
    CHECK(parallel[i].residual == serial[i].residual);
    CHECK(parallel[i].bound == serial[i].bound);
    CHECK(flatten(parallel[i].certificates) == flatten(serial[i].certificates));
    // The batch result equals a direct single visit.
    CHECK(flatten(serial[i].certificates) == flatten(orbit_visit(w, p, i + 1, spaces(), 32).certificates));
  }
}

TEST_CASE("fixpoint checks: serial and parallel agree") {
  omp_set_num_threads(4);
  Gen gen(51);
  const WeightSequence w = WeightSequence::parse("exp:1+1*i");
  std::vector<FixpointJob> jobs;
  for (int i = 0; i < 30; ++i) {
    FixpointJob job;
    const long N = gen.integer(1, 5);
    for (long m = 0; m < N; ++m) job.head.push_back(gen.scalar());
    job.K = static_cast<std::size_t>(gen.integer(1, 12));
    jobs.push_back(job);
  }
  const auto serial = fixpoint_checks(w, jobs, Execution::serial);
  const auto parallel = fixpoint_checks(w, jobs, Execution::parallel);
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].fixpoint.passed);
    CHECK(parallel[i].pp.prefix == serial[i].pp.prefix);
    CHECK(parallel[i].fixpoint.lhs == serial[i].fixpoint.lhs);
    CHECK(flatten(parallel[i].block_bounds) == flatten(serial[i].block_bounds));
  }
}

TEST_CASE("distances and norms: serial and parallel agree") {
  omp_set_num_threads(4);
  Gen gen(52);
  const WeightSequence w = WeightSequence::parse("exp:2");
  std::vector<DistanceJob> jobs;
  std::vector<CoordVector> vectors;
  for (int i = 0; i < 25; ++i) {
    CoordVector y = gen.sparse(6, 4);
    jobs.push_back({y, 6 + static_cast<std::size_t>(i % 5), 3});
    vectors.push_back(gen.sparse(15, 6, i % 2 == 0));
  }
  const auto serial = periodic_distances(w, jobs, spaces(), 32, Execution::serial);
  const auto parallel = periodic_distances(w, jobs, spaces(), 32, Execution::parallel);
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(parallel[i].bound == serial[i].bound);
    CHECK(flatten(parallel[i].certificates) == flatten(serial[i].certificates));
  }
  for (const SpaceSpec& space : spaces()) {
    CHECK(norms(space, vectors, 40, Execution::serial) == norms(space, vectors, 40, Execution::parallel));
  }
}

TEST_CASE("parallel kernels propagate errors") {
  omp_set_num_threads(4);
  const WeightSequence w = WeightSequence::parse("exp:2");
  std::vector<DistanceJob> jobs{{CoordVector::basis(1), 2, 2}, {CoordVector::basis(5), 2, 2}};
  CHECK_THROWS_AS(periodic_distances(w, jobs, spaces(), 32, Execution::parallel), Error);
  CHECK_THROWS_AS(periodic_distances(w, jobs, spaces(), 32, Execution::serial), Error);
}
