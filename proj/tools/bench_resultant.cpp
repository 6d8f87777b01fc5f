// Benchmark: serial vs OpenMP-parallel paths of the multi-modular kernels
// (iterated-resultant chain and per-form class-polynomial evaluation).
#include "fermat3/cmfloat.hpp"
#include "fermat3/dynamics.hpp"

#include <chrono>
#include <cstdio>

using namespace fermat3;
using Clock = std::chrono::steady_clock;

static double run_Rn(int n, bool parallel)
{
    DynamicsOptions opt;
    opt.parallel = parallel;
    opt.warn_n5 = false;
    auto t0 = Clock::now();
    DensePoly r = iterated_resultant(n, opt);
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("  R_%d (deg %d): %s %.3fs\n", n, r.degree(), parallel ? "parallel" : "serial  ",
                dt);
    return dt;
}

static double run_classpoly(long d, bool parallel)
{
    auto t0 = Clock::now();
    auto r = ring_class_poly(d, 0, parallel);
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("  H_{-%ld} (deg %d, %ld bits): %s %.3fs\n", d, r.H.degree(),
                static_cast<long>(r.bits_used), parallel ? "parallel" : "serial  ", dt);
    return dt;
}

int main(int argc, char** argv)
{
    int n = argc > 1 ? std::atoi(argv[1]) : 4;
    std::printf("iterated resultant chain:\n");
    double s = run_Rn(n, false);
    double p = run_Rn(n, true);
    std::printf("  speedup x%.2f\n", s / p);
    std::printf("class polynomial evaluation:\n");
    double s2 = run_classpoly(2003, false);
    double p2 = run_classpoly(2003, true);
    std::printf("  speedup x%.2f\n", s2 / p2);
    return 0;
}
