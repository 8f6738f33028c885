// Serial reference vs OpenMP batch over random multi-level scenarios.
// Usage: bench_batch [scenarios=400] [repeats=3]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "remedysim/batch.hpp"
#include "remedysim/generate.hpp"

using namespace remedysim;

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 400;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  std::mt19937_64 rng(1);
  std::vector<Scenario> scenarios;
  for (int i = 0; i < n; ++i) {
    auto s = random_multilevel(rng);
    s.rounds = 3;
    scenarios.push_back(std::move(s));
  }

  auto time = [&](auto&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      fn();
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  };

  std::vector<RunReport> serial, parallel;
  const double ts = time([&] { serial = run_batch_serial(scenarios); });
  const double tp = time([&] { parallel = run_batch(scenarios); });

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::cout << "scenarios " << n << ", threads " << threads << '\n';
  std::cout << "serial    " << ts * 1e3 << " ms\n";
  std::cout << "parallel  " << tp * 1e3 << " ms\n";
  std::cout << "speedup   " << ts / tp << '\n';
  if (!(serial == parallel)) {
    std::cerr << "parallel results differ from the serial reference\n";
    return 1;
  }
  return 0;
}
