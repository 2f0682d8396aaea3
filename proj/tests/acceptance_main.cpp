// Acceptance gate: one timed pass/fail line per criterion, nonzero exit when
// any line fails.  Each criterion enforces both its numeric tolerance and its
// wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "subdirac/clifford.hpp"
#include "subdirac/curvature.hpp"
#include "subdirac/cutoff.hpp"
#include "subdirac/dims.hpp"
#include "subdirac/heat.hpp"
#include "subdirac/internal_space.hpp"
#include "subdirac/matrix_rep.hpp"
#include "subdirac/rng.hpp"
#include "subdirac/torus.hpp"

using namespace subdirac;

namespace {

constexpr double pi = std::numbers::pi;

const std::vector<Dims> kAllDims = {{1, 2}, {1, 4}, {2, 2}};
const std::vector<Dims> kInternalDims = {{1, 2}, {2, 2}};

std::string fmt(const char* pattern, double value) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), pattern, value);
    return buf;
}

// empty return = pass; otherwise the failure detail
using Criterion = std::function<std::string()>;

bool run_criterion(int index, int total, const char* name, double budget_s,
                   const Criterion& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
        detail = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && elapsed > budget_s)
        detail = fmt("exceeded the %.0f s budget", budget_s) + fmt(" (took %.2f s)", elapsed);
    std::printf("[%d/%d] %s  %-58s (%.2f s, budget %.0f s)%s%s\n", index, total,
                detail.empty() ? "PASS" : "FAIL", name, elapsed, budget_s,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    return detail.empty();
}

std::vector<Generator> generator_list(const Dims& d) {
    std::vector<Generator> gens;
    for (int i = 1; i <= d.leaf_rank(); ++i) gens.push_back(Generator::leaf_c(i));
    for (int s = 1; s <= d.q; ++s) gens.push_back(Generator::normal_c(s));
    for (int s = 1; s <= d.q; ++s) gens.push_back(Generator::normal_hat(s));
    return gens;
}

// --- criterion bodies -------------------------------------------------------

std::string exact_trace_identities() {
    for (const Dims& d : kAllDims) {
        const GaussianRational fib(d.fibre_dim());
        if (trace(AlgebraElement::identity(d)) != fib)
            return "tr(Id) != 2^(p+q) at " + d.str();

        for (int i = 1; i <= d.leaf_rank(); ++i) {
            if (!trace(AlgebraElement::generator(d, Generator::leaf_c(i))).is_zero())
                return "tr c(f_i) != 0 at " + d.str();
            for (int j = 1; j <= d.leaf_rank(); ++j) {
                if (i == j) continue;
                const auto w = AlgebraElement::from_word(
                    d, {Generator::leaf_c(i), Generator::leaf_c(j)});
                if (!trace(w).is_zero()) return "tr c(f_i)c(f_j) != 0 at " + d.str();
            }
        }

        // mixed quartets with distinct plain normal indices are traceless
        for (int r = 1; r <= d.q; ++r)
            for (int l = 1; l <= d.q; ++l) {
                if (r == l) continue;
                for (int s = 1; s <= d.q; ++s)
                    for (int t = 1; t <= d.q; ++t) {
                        const auto w = AlgebraElement::from_word(
                            d, {Generator::normal_c(r), Generator::normal_c(l),
                                Generator::normal_hat(s), Generator::normal_hat(t)});
                        if (!trace(w).is_zero())
                            return "mixed normal quartet trace != 0 at " + d.str();
                    }
            }

        // every admissible hat quartet against the two-delta closed form
        for (int s = 1; s <= d.q; ++s)
            for (int t = 1; t <= d.q; ++t) {
                if (t == s) continue;
                for (int s2 = 1; s2 <= d.q; ++s2)
                    for (int t2 = 1; t2 <= d.q; ++t2) {
                        if (t2 == s2) continue;
                        const auto w = AlgebraElement::from_word(
                            d, {Generator::normal_hat(s), Generator::normal_hat(t),
                                Generator::normal_hat(s2), Generator::normal_hat(t2)});
                        const long expected =
                            d.fibre_dim() * ((t == s2 && s == t2 ? 1 : 0) -
                                             (t == t2 && s == s2 ? 1 : 0));
                        if (trace(w) != GaussianRational(expected))
                            return "hat quartet closed form failed at " + d.str();
                    }
            }
    }
    return {};
}

std::string symbolic_vs_matrix_traces() {
    for (const Dims& d : kAllDims) {
        const MatrixRep rep(d);
        const auto gens = generator_list(d);
        std::mt19937_64 rng(2024);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            Word w;
            const int len = uniform_int(rng, 0, 8);
            for (int k = 0; k < len; ++k)
                w.push_back(gens[static_cast<std::size_t>(
                    uniform_int(rng, 0, static_cast<int>(gens.size()) - 1))]);
            const auto sym = trace(AlgebraElement::from_word(d, w)).to_complex();
            worst = std::max(worst, std::abs(rep.oracle_trace_word(w) - sym));
        }
        if (worst > 1e-10)
            return "worst symbolic/matrix trace deviation " + fmt("%.3e", worst) + " at " +
                   d.str();
    }
    return {};
}

std::string potential_traces() {
    for (const Dims& d : kAllDims) {
        for (unsigned seed = 1; seed <= 100; ++seed) {
            const CurvaturePoint c = random_point(d, seed);
            const PotentialE e = build_E(c);
            const TraceFormulas f = trace_formulas(c);

            // tr E: exact rational identity, no tolerance at all
            mpq_class expected = mpq_class(c.scalar_curv) * (-d.fibre_dim());
            expected /= 4;
            if (trace_E(e) != GaussianRational(expected))
                return "tr E not exactly -2^(p+q) r_M/4 at " + d.str();

            const double checks[] = {
                std::fabs(trace_E_sq(e).re.get_d() - f.tr_e_sq),
                std::fabs(trace_sq(e.i1).re.get_d() - f.tr_i1_sq),
                std::fabs(trace_sq(e.i2).re.get_d() - f.tr_i2_sq),
                std::fabs(trace_sq(e.i3).re.get_d() - f.tr_i3_sq),
                std::fabs(trace_omega_sq(build_Omega(c)).re.get_d() - f.tr_omega_sq)};
            for (double dev : checks)
                if (!(dev <= 1e-9))
                    return "potential trace deviation " + fmt("%.3e", dev) + " at " + d.str();
        }
    }
    return {};
}

std::string order4_density() {
    for (const Dims& d : kAllDims) {
        for (unsigned seed = 1; seed <= 100; ++seed) {
            const CurvaturePoint c = random_point(d, seed);
            const double dev =
                std::fabs(density_closed_generic(c, 4) - density_closed_formula(c, 4));
            if (!(dev <= 1e-9))
                return "order-4 density deviation " + fmt("%.3e", dev) + " at " + d.str();
        }
    }
    // constant-curvature fixture with a hand-computed bracket
    const CurvaturePoint fix = constant_curvature(Dims{1, 2}, 1.0);
    const double expected = 66.0 / (720.0 * pi * pi);
    if (std::fabs(density_closed_formula(fix, 4) - expected) > 1e-12)
        return "constant-curvature fixture value off";
    if (std::fabs(density_closed_generic(fix, 4) - expected) > 1e-9)
        return "generic path misses the fixture value";
    return {};
}

std::string boundary_family() {
    const Dims d{1, 2};
    const NormalDerivativeAudit audit = boundary_normal_derivative_audit();
    if (audit.generic_coeff != 12.0 || audit.printed_coeff != -51.0)
        return "normal-derivative audit coefficients are not (+12, -51)";

    for (unsigned seed = 1; seed <= 100; ++seed) {
        const CurvaturePoint c = random_point(d, seed, true);
        for (int order = 1; order <= 3; ++order) {
            const BoundaryDensity g = density_boundary_generic(c, order);
            const BoundaryDensity f = density_boundary_formula(c, order);
            if (!(std::fabs(g.interior - f.interior) <= 1e-9) ||
                !(std::fabs(g.boundary - f.boundary) <= 1e-9))
                return fmt("order-%0.f boundary density disagrees", order);
        }
        const BoundaryDensity g4 = density_boundary_generic(c, 4);
        const BoundaryDensity f4 = density_boundary_formula(c, 4);
        const double g_stripped =
            g4.boundary - boundary_normal_derivative_term(c, audit.generic_coeff);
        const double f_stripped =
            f4.boundary - boundary_normal_derivative_term(c, audit.printed_coeff);
        if (!(std::fabs(g4.interior - f4.interior) <= 1e-9))
            return "order-4 interior parts disagree";
        if (!(std::fabs(g_stripped - f_stripped) <= 1e-9))
            return "order-4 boundary parts disagree beyond the r_M;N term";
    }
    return {};
}

std::string internal_twists() {
    for (const Dims& d : kInternalDims) {
        const MatrixRep rep(d);
        for (unsigned k = 0; k < 50; ++k) {
            const long n_f = 2 + static_cast<long>(k % 2);
            const CurvaturePoint c = random_point(d, 500 + k);
            const InternalSpace s = random_internal(d, n_f, 900 + k);

            const TraceComparison t = trace_E_phi(c, s, rep);
            if (!(std::fabs(t.oracle - t.corrected) <= 1e-9))
                return "twisted trace misses the corrected form at " + d.str();
            // the retained variant must genuinely disagree (sign audit)
            if (std::fabs(invariants(c).r_M) > 1e-3 &&
                std::fabs(t.oracle - t.reference) <= 1e-9)
                return "sign audit vacuous: reference variant also matches at " + d.str();

            const PairComparison sq = trace_E_phi_sq(c, s, rep);
            if (!(std::fabs(sq.oracle - sq.formula) <= 1e-9))
                return "twisted squared trace deviates at " + d.str();

            const PairComparison om = twisted_omega_trace(c, s, rep);
            if (!(std::fabs(om.oracle - om.formula) <= 1e-9))
                return "twisted curvature-form trace deviates at " + d.str();
        }

        // term isolation: one block at a time on a flat point
        const double fib = static_cast<double>(d.fibre_dim());
        const InternalSpace full = random_internal(d, 3, 4242);
        const CurvaturePoint flat = flat_point(d);

        InternalSpace only = trivial_internal(d, 3);
        only.phi = full.phi;
        const double tr_phi4 =
            (only.phi * only.phi * only.phi * only.phi).trace().real();
        if (std::fabs(trace_E_phi_sq(flat, only, rep).oracle - fib * tr_phi4) > 1e-9)
            return "phi-only isolation fails at " + d.str();

        only = trivial_internal(d, 3);
        only.gauge = full.gauge;
        double gauge_sq = 0.0;
        for (const auto& row : only.gauge)
            for (const auto& g : row) gauge_sq += (g * g).trace().real();
        if (std::fabs(trace_E_phi_sq(flat, only, rep).oracle + fib / 2.0 * gauge_sq) > 1e-9)
            return "gauge-only isolation fails at " + d.str();
        if (std::fabs(twisted_omega_trace(flat, only, rep).oracle - fib * gauge_sq) > 1e-9)
            return "gauge-only curvature-form isolation fails at " + d.str();

        only = trivial_internal(d, 3);
        only.commutators = full.commutators;
        double k_sq = 0.0;
        for (const auto& m : only.commutators) k_sq += (m * m).trace().real();
        if (std::fabs(trace_E_phi_sq(flat, only, rep).oracle - fib * k_sq) > 1e-9)
            return "commutator-only isolation fails at " + d.str();
    }
    return {};
}

std::string parameterized_densities() {
    const Dims d{1, 2};

    // replicate the prefactor algorithm so exactness means bit-for-bit equality
    double pip = 1.0;
    for (int k = 0; k < d.p + d.q / 2; ++k) pip *= pi;
    const double pref = 1.0 / (std::ldexp(1.0, d.p) * pip);

    SMParams unit;
    unit.a = unit.b = unit.c = unit.d = unit.e = 1.0;
    unit.g1 = unit.g2 = unit.g3 = 1.0;
    unit.norm_G_sq = unit.norm_F1_sq = unit.norm_B_sq = 1.0;
    unit.phi_sq = unit.phi_quart = unit.dphi_sq = 1.0;
    unit.r_M = unit.ric_sq = unit.riem_sq = unit.rfperp_norm_sq = 1.0;

    const SMCoefficients k = sm_coefficients(d, unit, true);
    if (k.a0_density != 96.0 * pref) return "a0 density is not exactly 96x the prefactor";
    if (k.i_new_density != 2.0 * pref)
        return "normal-curvature density is not exactly 2x the prefactor at unit norm";

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        SMParams p;
        p.a = uniform_sym(rng);
        p.b = uniform_sym(rng);
        p.c = uniform_sym(rng);
        p.d = uniform_sym(rng);
        p.e = uniform_sym(rng);
        p.g1 = uniform_sym(rng);
        p.g2 = uniform_sym(rng);
        p.g3 = uniform_sym(rng);
        p.norm_G_sq = uniform01(rng);
        p.norm_F1_sq = uniform01(rng);
        p.norm_B_sq = uniform01(rng);
        p.phi_sq = uniform01(rng);
        p.phi_quart = uniform01(rng);
        p.dphi_sq = uniform01(rng);
        p.r_M = uniform_sym(rng);
        p.ric_sq = uniform01(rng);
        p.riem_sq = uniform01(rng);
        p.rfperp_norm_sq = uniform01(rng);
        for (bool corrected : {false, true}) {
            const double dev = std::fabs(sm_a4_reassembled(d, p, corrected) -
                                         sm_coefficients(d, p, corrected).a4_density);
            if (!(dev <= 1e-9))
                return "order-4 reassembly deviation " + fmt("%.3e", dev);
        }
    }
    return {};
}

std::string torus_spectrum() {
    const TorusSpec t; // unit periods, dims (1, 2)

    const double heat = torus_heat_trace(t, 0.01);
    const double lhs = 0.01 * 0.01 * heat;
    const double rhs = 1.0 / (2.0 * pi * pi);
    if (!(std::fabs(lhs - rhs) / rhs <= 1e-9))
        return "t^2 x heat trace misses 1/(2 pi^2), rel dev " +
               fmt("%.3e", std::fabs(lhs - rhs) / rhs);

    const long long count = torus_count_action(t, 200.0);
    const double weyl = std::pow(200.0, 4.0) / (4.0 * pi * pi);
    const double rel = std::fabs(static_cast<double>(count) - weyl) / weyl;
    if (!(rel <= 0.05))
        return "count at scale 200 off the volume term by " + fmt("%.3f", rel);

    const long long zero = torus_count_action(t, pi);
    if (zero != 8) return "kernel dimension is not exactly 8";
    return {};
}

std::string cutoff_moments() {
    const CutoffMoments m = cutoff_moments_named("characteristic");
    if (m.f4 != 0.5) return "F_4 != 1/2";
    if (m.f2 != 1.0) return "F_2 != 1";
    if (m.f0 != 1.0) return "F_0 != 1";

    const auto characteristic = [](double s) { return s <= 1.0 ? 1.0 : 0.0; };
    const double f3 = cutoff_moment_quadrature(characteristic, 3);
    const double expected = 4.0 / (3.0 * std::sqrt(pi));
    if (!(std::fabs(f3 - expected) <= 1e-10))
        return "quadrature F_3 deviation " + fmt("%.3e", std::fabs(f3 - expected));
    return {};
}

} // namespace

int main() {
    int failures = 0;
    const auto gate = [&](int index, const char* name, double budget, const Criterion& body) {
        if (!run_criterion(index, 9, name, budget, body)) ++failures;
    };

    gate(1, "exact trace identities on the graded module", 1.0, exact_trace_identities);
    gate(2, "symbolic vs matrix traces on random words", 30.0, symbolic_vs_matrix_traces);
    gate(3, "curvature potential traces vs closed forms", 120.0, potential_traces);
    gate(4, "order-4 interior density, generic vs closed form", 120.0, order4_density);
    gate(5, "boundary coefficient family and r_M;N audit", 120.0, boundary_family);
    gate(6, "twisted potential traces vs the matrix oracle", 120.0, internal_twists);
    gate(7, "parameterized densities and exact prefactors", 10.0, parameterized_densities);
    gate(8, "flat torus spectrum, heat trace and count", 120.0, torus_spectrum);
    gate(9, "cutoff profile moments", 1.0, cutoff_moments);

    if (failures == 0) {
        std::printf("acceptance: all 9 criteria satisfied\n");
        return 0;
    }
    std::printf("acceptance: %d of 9 criteria failed\n", failures);
    return 1;
}
