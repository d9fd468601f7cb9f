// Timing harness comparing the serial reference kernels against the
// OpenMP-parallel ones on full brickwall layers. The outputs must agree
// bitwise; the table reports both timings and the speedup.

#include <chrono>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "twostage/kernels.hpp"
#include "twostage/magnet.hpp"
#include "twostage/schedule.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace twostage;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void bench_coordinate_kernel(int L, int reps) {
    Schedule sched = build_schedule(Geometry::Brickwall, Boundary::Open, L);
    LocalTransfer gate = local_transfer(GateFamily::xyz(1, 1, 0.5));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> base(std::size_t(1) << L);
    for (double& v : base) v = dist(rng);

    std::vector<double> a = base, b = base;
    auto layer = [&](std::vector<double>& v, kernels::Exec exec) {
        for (int t = 0; t < reps; ++t)
            for (const GatePos& g : sched.time_step(t))
                kernels::apply_two_site(v, L, g.a, g.b, gate, exec);
    };

    auto t0 = Clock::now();
    layer(a, kernels::Exec::Serial);
    double serial = ms_since(t0);
    t0 = Clock::now();
    layer(b, kernels::Exec::Parallel);
    double parallel = ms_since(t0);

    bool identical = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) identical = false;

    std::printf("%-24s L=%-3d %10.1f %12.1f %8.2fx   %s\n", "coordinate 4x4", L,
                serial, parallel, serial / parallel,
                identical ? "bitwise equal" : "MISMATCH");
}

void bench_statevector_kernel(int n, int reps) {
    using C = std::complex<double>;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<C> base(std::size_t(1) << n);
    for (C& v : base) v = {dist(rng), dist(rng)};
    C g[16];
    for (C& v : g) v = {dist(rng), dist(rng)};

    std::vector<C> a = base, b = base;
    auto sweep = [&](std::vector<C>& v, kernels::Exec exec) {
        for (int t = 0; t < reps; ++t)
            for (int q = 0; q + 1 < n; q += 2)
                kernels::apply_two_qubit(v, n, q, q + 1, g, exec);
    };

    auto t0 = Clock::now();
    sweep(a, kernels::Exec::Serial);
    double serial = ms_since(t0);
    t0 = Clock::now();
    sweep(b, kernels::Exec::Parallel);
    double parallel = ms_since(t0);

    bool identical = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) identical = false;

    std::printf("%-24s n=%-3d %10.1f %12.1f %8.2fx   %s\n", "statevector 4x4", n,
                serial, parallel, serial / parallel,
                identical ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("%-24s %-5s %10s %12s %9s\n", "kernel", "size", "serial[ms]",
                "parallel[ms]", "speedup");
    bench_coordinate_kernel(20, 8);
    bench_coordinate_kernel(22, 4);
    bench_statevector_kernel(20, 4);
    bench_statevector_kernel(22, 2);
    return 0;
}
