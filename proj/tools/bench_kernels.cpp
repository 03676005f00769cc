// Compares the serial reference kernels against their OpenMP versions on real
// workloads: the tensor-product kernel and the campaign check runner. Exact
// arithmetic makes both paths bit-identical; only wall time differs.

#include <omp.h>

#include "kappa/suites.hpp"

#include <cstdio>
#include <cstring>

using namespace kappa;

namespace {

template <typename F>
double wall_time(F&& f) {
    double t0 = omp_get_wtime();
    f();
    return omp_get_wtime() - t0;
}

void row(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-34s %10.3fs %10.3fs %8.2fx   %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int order = 5;
    for (int k = 1; k < argc; ++k)
        if (std::strcmp(argv[k], "--order") == 0 && k + 1 < argc) order = std::atoi(argv[k + 1]);
    std::printf("threads: %d, order: %d\n", omp_get_max_threads(), order);
    std::printf("%-34s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    // tensor-product kernel on a cocycle-sized workload
    {
        auto igl = make_igl(4, order);
        auto H0 = make_primitive_hopf(igl);
        Twist F = build_abelian_twist(igl, Rational(1, 2), order);
        TensorElement f12 = F.forward.insert_unit_leg(2);
        TensorElement big = H0->coproduct_on_leg(F.forward, 0);
        TensorElement rs, rp;
        double ts = wall_time([&] { rs = f12.mul_serial(big); });
        double tp = wall_time([&] { rp = f12.mul_parallel(big); });
        row("tensor rank-3 product", ts, tp, rs == rp);
    }

    // campaign runner on the twist suite
    {
        TwistSuiteConfig cfg;
        cfg.order = order;
        cfg.jordanian_order = std::min(order, 5);
        cfg.abelian_s = {Rational(0), Rational(1, 2)};
        cfg.jordanian_r = {Rational(1)};
        cfg.star_triples = 4;
        VerificationReport rs, rp;
        cfg.parallel = false;
        double ts = wall_time([&] { rs = run_twist_suite(cfg); });
        cfg.parallel = true;
        double tp = wall_time([&] { rp = run_twist_suite(cfg); });
        row("twist verification campaign", ts, tp, rs.to_json() == rp.to_json());
    }

    // campaign runner on the Hopf-axiom suite
    {
        HopfSuiteConfig cfg;
        cfg.order = std::min(order, 5);
        VerificationReport rs, rp;
        cfg.parallel = false;
        double ts = wall_time([&] { rs = run_hopf_suite(cfg); });
        cfg.parallel = true;
        double tp = wall_time([&] { rp = run_hopf_suite(cfg); });
        row("hopf-axiom campaign", ts, tp, rs.to_json() == rp.to_json());
    }
    return 0;
}
