// Timing comparison of the serial sweep reference against the OpenMP path,
// with an output byte-identity check.

#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "nh/sweep.hpp"

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

}  // namespace

int main(int argc, char** argv) {
    int points = 20000;
    if (argc > 1) points = std::atoi(argv[1]);

    nh::SweepConfig cfg;
    cfg.model = "alpha_beta";
    cfg.axes = {{"alpha", 0.01, nh::kPi - 0.01, points}};
    cfg.fixed = {{"beta", 0.42}};
    cfg.with_expected = false;

    cfg.parallel = false;
    const double t0 = now();
    const std::string serial = nh::run_sweep(cfg).to_csv();
    const double t1 = now();

    cfg.parallel = true;
    const double t2 = now();
    const std::string parallel = nh::run_sweep(cfg).to_csv();
    const double t3 = now();

    const double ts = t1 - t0, tp = t3 - t2;
    std::printf("grid points  %d\n", points);
    std::printf("serial       %.3f s\n", ts);
#ifdef _OPENMP
    std::printf("parallel     %.3f s  (%d threads)\n", tp, omp_get_max_threads());
#else
    std::printf("parallel     %.3f s  (built without OpenMP)\n", tp);
#endif
    std::printf("speedup      %.2fx\n", ts / tp);
    if (serial != parallel) {
        std::printf("MISMATCH: parallel output differs from the serial reference\n");
        return 1;
    }
    std::printf("outputs identical\n");
    return 0;
}
