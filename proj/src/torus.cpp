#include "subdirac/torus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <gmpxx.h>

#include "subdirac/errors.hpp"

namespace subdirac {

namespace {

constexpr double pi = std::numbers::pi;

void check_budget(const std::array<long, 4>& half_extents) {
    long long box = 1;
    for (long k : half_extents) {
        box *= 2 * static_cast<long long>(k) + 1;
        if (box > lattice_budget)
            throw resource_error("lattice enumeration budget exceeded (box > " +
                                 std::to_string(lattice_budget) + " points)");
    }
}

// largest integer k >= 0 with k^2 * w <= bound (bound >= 0), given k <= hint + 1
long isqrt_below(double bound, double w, long hint) {
    long k = hint + 1;
    while (k > 0 && static_cast<double>(k) * k * w > bound) --k;
    return k;
}

// shared truncation/weight setup for the lattice sums
struct LatticeWindow {
    std::array<double, 4> weight{}; // per-axis eigenvalue weights
    std::array<long, 4> extent{};   // per-axis half extents
};

LatticeWindow heat_window(const TorusSpec& t, double time) {
    LatticeWindow win;
    for (int i = 0; i < 4; ++i) {
        const double l = t.periods[static_cast<std::size_t>(i)];
        win.weight[static_cast<std::size_t>(i)] = 4.0 * pi * pi / (l * l);
        // truncate where time * eigenvalue >= 50 on this axis alone
        win.extent[static_cast<std::size_t>(i)] =
            static_cast<long>(std::ceil(l * std::sqrt(50.0 / time) / (2.0 * pi))) + 1;
    }
    check_budget(win.extent);
    return win;
}

LatticeWindow count_window(const TorusSpec& t, double radius) {
    LatticeWindow win;
    for (int i = 0; i < 4; ++i) {
        const double l = t.periods[static_cast<std::size_t>(i)];
        win.weight[static_cast<std::size_t>(i)] = 1.0 / (l * l);
        win.extent[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(radius * l)) + 1;
    }
    check_budget(win.extent);
    return win;
}

double heat_slab(const LatticeWindow& win, double time, long k0) {
    double local = 0.0;
    const double e0 = win.weight[0] * static_cast<double>(k0) * k0;
    for (long k1 = -win.extent[1]; k1 <= win.extent[1]; ++k1)
        for (long k2 = -win.extent[2]; k2 <= win.extent[2]; ++k2)
            for (long k3 = -win.extent[3]; k3 <= win.extent[3]; ++k3) {
                const double ev = e0 + win.weight[1] * static_cast<double>(k1) * k1 +
                                  win.weight[2] * static_cast<double>(k2) * k2 +
                                  win.weight[3] * static_cast<double>(k3) * k3;
                local += std::exp(-time * ev);
            }
    return local;
}

// lattice points of the slab k0 = const inside the ellipsoid; each loop level
// subtracts its contribution from the squared-radius bound
long long count_slab(const LatticeWindow& win, double bound, long k0) {
    const double b0 = bound - win.weight[0] * static_cast<double>(k0) * k0;
    const long n1 = isqrt_below(b0, win.weight[1], win.extent[1]);
    long long local = 0;
    for (long k1 = -n1; k1 <= n1; ++k1) {
        const double b1 = b0 - win.weight[1] * static_cast<double>(k1) * k1;
        const long n2 = isqrt_below(b1, win.weight[2], win.extent[2]);
        for (long k2 = -n2; k2 <= n2; ++k2) {
            const double b2 = b1 - win.weight[2] * static_cast<double>(k2) * k2;
            local += 2 * isqrt_below(b2, win.weight[3], win.extent[3]) + 1;
        }
    }
    return local;
}

} // namespace

void TorusSpec::validate() const {
    if (dims.m() != 4)
        throw unsupported_dimension_error("torus benchmark requires ambient dimension 4");
    for (double l : periods)
        if (!(l > 0.0)) throw input_error("torus periods must be positive");
}

SpectrumSlice torus_eigenvalues(const TorusSpec& t, double cut) {
    t.validate();
    if (!(cut > 0.0)) throw input_error("spectrum cut must be positive");

    // enumerate k with sum (k_i / l_i)^2 <= (cut / 2 pi)^2, grouped by the
    // exact rational key sum k_i^2 w_i, w_i = 1/l_i^2 (exact from doubles)
    const double radius = cut / (2.0 * pi);
    const mpq_class bound = mpq_class(radius) * mpq_class(radius);
    std::array<mpq_class, 4> w;
    std::array<long, 4> ext{};
    for (int i = 0; i < 4; ++i) {
        const mpq_class l(t.periods[static_cast<std::size_t>(i)]);
        w[static_cast<std::size_t>(i)] = 1 / (l * l);
        ext[static_cast<std::size_t>(i)] =
            static_cast<long>(std::floor(radius * t.periods[static_cast<std::size_t>(i)])) + 1;
    }
    check_budget(ext);

    std::map<mpq_class, long long> groups;
    mpq_class key;
    for (long k0 = -ext[0]; k0 <= ext[0]; ++k0)
        for (long k1 = -ext[1]; k1 <= ext[1]; ++k1)
            for (long k2 = -ext[2]; k2 <= ext[2]; ++k2)
                for (long k3 = -ext[3]; k3 <= ext[3]; ++k3) {
                    key = w[0] * (k0 * k0);
                    key += w[1] * (k1 * k1);
                    key += w[2] * (k2 * k2);
                    key += w[3] * (k3 * k3);
                    if (key > bound) continue;
                    groups[key] += 1;
                }

    const long long fib = t.dims.fibre_dim();
    SpectrumSlice out;
    out.groups.reserve(groups.size());
    for (const auto& [k, count] : groups)
        out.groups.emplace_back(4.0 * pi * pi * k.get_d(), count * fib);
    return out;
}

double torus_heat_trace(const TorusSpec& t, double time) {
    t.validate();
    if (!(time > 0.0)) throw input_error("heat trace time must be positive");
    const LatticeWindow win = heat_window(t, time);
    const long n0 = win.extent[0];
    double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) schedule(static)
    for (long k0 = -n0; k0 <= n0; ++k0) acc += heat_slab(win, time, k0);
    return acc * static_cast<double>(t.dims.fibre_dim());
}

double torus_heat_trace_serial(const TorusSpec& t, double time) {
    t.validate();
    if (!(time > 0.0)) throw input_error("heat trace time must be positive");
    const LatticeWindow win = heat_window(t, time);
    double acc = 0.0;
    for (long k0 = -win.extent[0]; k0 <= win.extent[0]; ++k0) acc += heat_slab(win, time, k0);
    return acc * static_cast<double>(t.dims.fibre_dim());
}

long long torus_count_action(const TorusSpec& t, double lambda) {
    t.validate();
    if (!(lambda > 0.0)) throw input_error("count scale must be positive");
    const double radius = lambda / (2.0 * pi);
    const double bound = radius * radius;
    const LatticeWindow win = count_window(t, radius);
    const long n0 = isqrt_below(bound, win.weight[0], win.extent[0]);
    long long count = 0;
#pragma omp parallel for reduction(+ : count) schedule(dynamic)
    for (long k0 = -n0; k0 <= n0; ++k0) count += count_slab(win, bound, k0);
    return count * t.dims.fibre_dim();
}

long long torus_count_action_serial(const TorusSpec& t, double lambda) {
    t.validate();
    if (!(lambda > 0.0)) throw input_error("count scale must be positive");
    const double radius = lambda / (2.0 * pi);
    const double bound = radius * radius;
    const LatticeWindow win = count_window(t, radius);
    const long n0 = isqrt_below(bound, win.weight[0], win.extent[0]);
    long long count = 0;
    for (long k0 = -n0; k0 <= n0; ++k0) count += count_slab(win, bound, k0);
    return count * t.dims.fibre_dim();
}

nlohmann::json torus_to_json(const TorusSpec& t) {
    return nlohmann::json{{"p", t.dims.p},
                          {"q", t.dims.q},
                          {"periods", {t.periods[0], t.periods[1], t.periods[2], t.periods[3]}}};
}

TorusSpec torus_from_json(const nlohmann::json& j) {
    try {
        TorusSpec t;
        if (j.contains("p") || j.contains("q")) t.dims = Dims(j.value("p", 1), j.value("q", 2));
        if (j.contains("periods")) {
            const auto& per = j.at("periods");
            if (!per.is_array() || per.size() != 4)
                throw input_error("torus periods must be an array of four side lengths");
            for (int i = 0; i < 4; ++i)
                t.periods[static_cast<std::size_t>(i)] =
                    per[static_cast<std::size_t>(i)].get<double>();
        }
        t.validate();
        return t;
    } catch (const nlohmann::json::exception& ex) {
        throw input_error(std::string("torus json: ") + ex.what());
    }
}

} // namespace subdirac
