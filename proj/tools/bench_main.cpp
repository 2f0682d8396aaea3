// Benchmark harness: times the OpenMP kernels against their serial reference
// implementations and checks that both produce the same numbers.  Exit code 0
// when every pair agrees.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "subdirac/torus.hpp"
#include "subdirac/verify.hpp"

namespace {

template <typename F>
double timed(F&& f, double& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = static_cast<double>(f());
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report_row(const char* name, double serial_s, double parallel_s, bool agree) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name,
                serial_s, parallel_s, parallel_s > 0.0 ? serial_s / parallel_s : 0.0,
                agree ? "agree" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial-vs-parallel benchmark for the lattice and density kernels"};
    double lambda = 150.0;
    double time = 0.005;
    long trials = 40;
    unsigned seed = 1;
    app.add_option("--lambda", lambda, "count-kernel cutoff scale");
    app.add_option("--time", time, "heat-kernel time");
    app.add_option("--trials", trials, "density-batch size");
    app.add_option("--seed", seed, "density-batch seed");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads available: %d\n\n", omp_get_max_threads());

    const subdirac::TorusSpec spec;
    bool all_agree = true;

    double count_ser = 0.0, count_par = 0.0;
    const double t_cs = timed([&] { return subdirac::torus_count_action_serial(spec, lambda); },
                              count_ser);
    const double t_cp = timed([&] { return subdirac::torus_count_action(spec, lambda); },
                              count_par);
    const bool count_ok = count_ser == count_par; // integer counts match exactly
    all_agree = all_agree && count_ok;
    report_row("torus eigenvalue count", t_cs, t_cp, count_ok);

    double heat_ser = 0.0, heat_par = 0.0;
    const double t_hs = timed([&] { return subdirac::torus_heat_trace_serial(spec, time); },
                              heat_ser);
    const double t_hp = timed([&] { return subdirac::torus_heat_trace(spec, time); }, heat_par);
    const bool heat_ok = std::fabs(heat_ser - heat_par) <= 1e-12 * std::fabs(heat_ser);
    all_agree = all_agree && heat_ok;
    report_row("torus heat trace", t_hs, t_hp, heat_ok);

    const subdirac::Dims d{1, 2};
    double dev_ser = 0.0, dev_par = 0.0;
    const double t_ds = timed(
        [&] { return subdirac::order4_deviation_batch(d, seed, trials, false); }, dev_ser);
    const double t_dp = timed(
        [&] { return subdirac::order4_deviation_batch(d, seed, trials, true); }, dev_par);
    const bool dev_ok = dev_ser == dev_par; // max over the same value set
    all_agree = all_agree && dev_ok;
    report_row("order-4 density batch", t_ds, t_dp, dev_ok);

    std::printf("\ncount %.0f, heat trace %.6f, worst order-4 deviation %.3e\n", count_par,
                heat_par, dev_par);
    return all_agree ? 0 : 1;
}
