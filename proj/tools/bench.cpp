#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "toric/coefficients.hpp"
#include "toric/polygon.hpp"
#include "toric/quadrature.hpp"
#include "toric/solver.hpp"

using namespace toric;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now();
        f();
        double dt = now() - t0;
        if (dt < best) best = dt;
    }
    return best;
}

}  // namespace

// Compares the serial reference path against the OpenMP path for the hot
// kernels and checks that both produce bit-identical results.
int main(int argc, char** argv) {
    std::string name = argc > 1 ? argv[1] : "hexagon";
    double h = argc > 2 ? std::atof(argv[2]) : 0.0;
    int reps = argc > 3 ? std::atoi(argv[3]) : 5;
    if (reps < 1 || (argc > 2 && h <= 0)) {
        std::printf("usage: bench [preset] [h] [reps]\n");
        return 3;
    }

    Polygon poly = Polygon::preset(name);
    if (h <= 0) h = default_spacing(poly);
    CoefficientSet coeffs = normalize(random_coefficients(poly, 42, 1.0));
    QuadratureScheme scheme = build_scheme(poly, coeffs, h, 2.0);
    ExtremalAffine target = extremal_affine(poly);
    std::vector<double> unit(scheme.nodes.size(), 1.0);

#ifdef _OPENMP
    std::printf("threads %d\n", omp_get_max_threads());
#else
    std::printf("threads 1 (no OpenMP)\n");
#endif
    std::printf("polygon %s  k=%d  h=%g  nodes %zu  basis %zu\n\n", name.c_str(), poly.k(), h,
                scheme.nodes.size(), coeffs.size());
    std::printf("%-16s %12s %12s %9s  %s\n", "kernel", "serial [ms]", "parallel[ms]", "speedup",
                "results");

    auto report = [&](const char* kernel, double ts, double tp, bool same) {
        std::printf("%-16s %12.3f %12.3f %8.2fx  %s\n", kernel, ts * 1e3, tp * 1e3, ts / tp,
                    same ? "bitwise equal" : "MISMATCH");
        return same;
    };

    bool all_same = true;
    {
        double rs = 0, rp = 0;
        double ts = best_of(reps, [&] { rs = integrate(scheme, coeffs, unit, Exec::serial); });
        double tp = best_of(reps, [&] { rp = integrate(scheme, coeffs, unit, Exec::parallel); });
        all_same &= report("integrate", ts, tp, rs == rp);
    }
    {
        double rs = 0, rp = 0;
        double ts = best_of(reps, [&] { rs = average_scalar(scheme, coeffs, Exec::serial); });
        double tp = best_of(reps, [&] { rp = average_scalar(scheme, coeffs, Exec::parallel); });
        all_same &= report("average_scalar", ts, tp, rs == rp);
    }
    {
        std::vector<CurvatureSample> ss, sp;
        double ts = best_of(reps, [&] { ss = sample_all(scheme, coeffs, target, Exec::serial); });
        double tp = best_of(reps, [&] { sp = sample_all(scheme, coeffs, target, Exec::parallel); });
        bool same = ss.size() == sp.size();
        for (size_t i = 0; same && i < ss.size(); ++i)
            same = ss[i].S == sp[i].S && ss[i].K == sp[i].K && ss[i].riem_sq == sp[i].riem_sq &&
                   ss[i].rho_norm == sp[i].rho_norm && ss[i].w_norm == sp[i].w_norm &&
                   ss[i].s_hat == sp[i].s_hat;
        all_same &= report("sample_all", ts, tp, same);
    }
    {
        std::vector<double> es, ep;
        double ts = best_of(reps, [&] { es = error_coefficients(scheme, coeffs, Exec::serial); });
        double tp = best_of(reps, [&] { ep = error_coefficients(scheme, coeffs, Exec::parallel); });
        all_same &= report("error_coeffs", ts, tp, es == ep);
    }
    {
        TMapResult ms{coeffs, 0}, mp{coeffs, 0};
        double ts = best_of(reps, [&] { ms = t_map(scheme, coeffs, {}, Exec::serial); });
        double tp = best_of(reps, [&] { mp = t_map(scheme, coeffs, {}, Exec::parallel); });
        all_same &= report("t_map", ts, tp,
                           ms.coeffs.values() == mp.coeffs.values() &&
                               ms.max_ratio_dev == mp.max_ratio_dev);
    }

    if (!all_same) {
        std::printf("\nserial and parallel paths disagree\n");
        return 1;
    }
    return 0;
}
