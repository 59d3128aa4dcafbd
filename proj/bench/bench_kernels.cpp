// Times the serial reference loops against the OpenMP kernels and checks that
// both produce the same results.
//
//   wshift_bench [repeats]

#include "wshift/kernels.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

using namespace wshift;

namespace {

double time_ms(const std::function<void()>& body, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-22s %12.2f %12.2f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

std::string flatten(const CertificateSet& set) {
  std::string out;
  for (const Certificate& c : set.items) out += c.name + c.lhs + c.rhs + (c.passed ? "1" : "0");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), repeats);
  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

  const WeightSequence w = WeightSequence::parse("exp:3/2");
  const std::vector<SpaceSpec> spaces{SpaceSpec::lp(1), SpaceSpec::lp(2), SpaceSpec::c0()};
  bool all_same = true;

  {
    const Schedule s = build_schedule(w, dense_targets(Field::real, 14), "dense:real");
    const HypercyclicPrefix p = hypercyclic_prefix(w, s, 14);
    std::vector<OrbitVisit> a;
    std::vector<OrbitVisit> b;
    const double ts = time_ms([&] { a = orbit_visits(w, p, spaces, 48, Execution::serial); }, repeats);
    const double tp = time_ms([&] { b = orbit_visits(w, p, spaces, 48, Execution::parallel); }, repeats);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
      same = a[i].image == b[i].image && flatten(a[i].certificates) == flatten(b[i].certificates);
    }
    row("orbit_visits", ts, tp, same);
    all_same = all_same && same;
  }

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  auto scalar = [&] {
    Rational q{Integer(num(rng)), Integer(den(rng))};
    q.canonicalize();
    return Scalar(q);
  };

  {
    std::vector<FixpointJob> jobs;
    for (std::size_t N = 1; N <= 5; ++N) {
      for (int i = 0; i < 16; ++i) {
        FixpointJob job;
        for (std::size_t m = 0; m < N; ++m) job.head.push_back(scalar());
        job.K = 20;
        jobs.push_back(std::move(job));
      }
    }
    std::vector<FixpointResult> a;
    std::vector<FixpointResult> b;
    const double ts = time_ms([&] { a = fixpoint_checks(w, jobs, Execution::serial); }, repeats);
    const double tp = time_ms([&] { b = fixpoint_checks(w, jobs, Execution::parallel); }, repeats);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
      same = a[i].pp.prefix == b[i].pp.prefix && a[i].fixpoint.passed == b[i].fixpoint.passed;
    }
    row("fixpoint_checks", ts, tp, same);
    all_same = all_same && same;
  }

  {
    std::vector<DistanceJob> jobs;
    for (std::size_t N = 4; N <= 24; ++N) {
      CoordVector y;
      for (Index k = 1; k <= 4; ++k) y.set(k, scalar());
      jobs.push_back({y, N, 6});
    }
    std::vector<PeriodicDistance> a;
    std::vector<PeriodicDistance> b;
    const double ts = time_ms([&] { a = periodic_distances(w, jobs, spaces, 48, Execution::serial); }, repeats);
    const double tp = time_ms([&] { b = periodic_distances(w, jobs, spaces, 48, Execution::parallel); }, repeats);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = flatten(a[i].certificates) == flatten(b[i].certificates);
    row("periodic_distances", ts, tp, same);
    all_same = all_same && same;
  }

  {
    std::vector<CoordVector> vectors;
    for (int i = 0; i < 400; ++i) {
      CoordVector v;
      for (Index k = 1; k <= 12; ++k) v.set(k, scalar());
      vectors.push_back(std::move(v));
    }
    const SpaceSpec space = SpaceSpec::parse("lp:3/2");
    std::vector<NormInterval> a;
    std::vector<NormInterval> b;
    const double ts = time_ms([&] { a = norms(space, vectors, 64, Execution::serial); }, repeats);
    const double tp = time_ms([&] { b = norms(space, vectors, 64, Execution::parallel); }, repeats);
    row("norms (lp:3/2)", ts, tp, a == b);
    all_same = all_same && a == b;
  }

  return all_same ? 0 : 1;
}
