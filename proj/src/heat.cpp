#include "subdirac/heat.hpp"

#include <cmath>
#include <numbers>

#include "subdirac/errors.hpp"

namespace subdirac {

namespace {

constexpr double pi = std::numbers::pi;

GaussianRational exact_weight(double value, const mpq_class& factor) {
    return GaussianRational(mpq_class(value) * factor);
}

double to_double(const GaussianRational& g) { return g.re.get_d(); }

void require_closed_order(int order) {
    if (order != 0 && order != 2 && order != 4)
        throw input_error("closed-case density order must be 0, 2 or 4, got " +
                          std::to_string(order));
}

const BoundaryPoint& boundary_of(const CurvaturePoint& c) {
    if (!c.boundary) throw input_error("boundary densities need a boundary block");
    return *c.boundary;
}

} // namespace

PotentialE build_E(const CurvaturePoint& c) {
    const Dims& d = c.dims;
    const int lp = d.leaf_rank();
    const int q = d.q;
    const mpq_class quarter(1, 4);
    const mpq_class eighth(1, 8);

    PotentialE out{d, AlgebraElement(d), AlgebraElement(d), AlgebraElement(d), AlgebraElement(d)};

    for (int i = 1; i <= lp; ++i)
        for (int r = 1; r <= q; ++r)
            for (int s = 1; s <= q; ++s)
                for (int t = 1; t <= q; ++t) {
                    const double v = c.Rp(i - 1, lp + r - 1, s - 1, t - 1);
                    if (v == 0.0) continue;
                    const Word w{Generator::leaf_c(i), Generator::normal_c(r),
                                 Generator::normal_hat(s), Generator::normal_hat(t)};
                    out.i1 += AlgebraElement::from_word(d, w, exact_weight(v, quarter));
                }

    for (int i = 1; i <= lp; ++i)
        for (int j = 1; j <= lp; ++j)
            for (int s = 1; s <= q; ++s)
                for (int t = 1; t <= q; ++t) {
                    const double v = c.Rp(i - 1, j - 1, s - 1, t - 1);
                    if (v == 0.0) continue;
                    const Word w{Generator::leaf_c(i), Generator::leaf_c(j),
                                 Generator::normal_hat(s), Generator::normal_hat(t)};
                    out.i2 += AlgebraElement::from_word(d, w, exact_weight(v, eighth));
                }

    for (int r = 1; r <= q; ++r)
        for (int l = 1; l <= q; ++l)
            for (int s = 1; s <= q; ++s)
                for (int t = 1; t <= q; ++t) {
                    const double v = c.Rp(lp + r - 1, lp + l - 1, s - 1, t - 1);
                    if (v == 0.0) continue;
                    const Word w{Generator::normal_c(r), Generator::normal_c(l),
                                 Generator::normal_hat(s), Generator::normal_hat(t)};
                    out.i3 += AlgebraElement::from_word(d, w, exact_weight(v, eighth));
                }

    AlgebraElement scalar = AlgebraElement::identity(d);
    scalar *= GaussianRational(mpq_class(c.scalar_curv) * quarter);
    out.full = -(scalar + out.i1 + out.i2 + out.i3);
    return out;
}

CurvatureTwoForm build_Omega(const CurvaturePoint& c) {
    const Dims& d = c.dims;
    const int m = d.m();
    const int q = d.q;
    const mpq_class minus_quarter(-1, 4);

    CurvatureTwoForm out{d, std::vector<AlgebraElement>(static_cast<std::size_t>(m) * m,
                                                        AlgebraElement(d))};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            AlgebraElement w(d);
            for (int k = 1; k <= m; ++k)
                for (int l = 1; l <= m; ++l) {
                    if (k == l) continue;
                    const double v = c.R(i, j, k - 1, l - 1);
                    if (v == 0.0) continue;
                    w += AlgebraElement::from_word(
                        d, {Generator::ambient_c(d, k), Generator::ambient_c(d, l)},
                        exact_weight(v, minus_quarter));
                }
            // The normal-bundle block is expanded in hat generators: their
            // mixed words with the tangential block are traceless, which is
            // what makes the quadratic trace close on the two squared norms.
            // Expanding it in plain normal generators instead would create
            // nonvanishing cross-traces against the tangential block.
            for (int s = 1; s <= q; ++s)
                for (int t = 1; t <= q; ++t) {
                    if (s == t) continue;
                    const double v = c.Rp(i, j, s - 1, t - 1);
                    if (v == 0.0) continue;
                    w += AlgebraElement::from_word(
                        d, {Generator::normal_hat(s), Generator::normal_hat(t)},
                        exact_weight(v, minus_quarter));
                }
            out.comp[static_cast<std::size_t>(i) * m + j] = std::move(w);
        }
    return out;
}

GaussianRational trace_E(const PotentialE& e) { return trace(e.full); }

GaussianRational trace_E_sq(const PotentialE& e) { return trace(mul(e.full, e.full)); }

GaussianRational trace_sq(const AlgebraElement& a) { return trace(mul(a, a)); }

GaussianRational trace_omega_sq(const CurvatureTwoForm& om) {
    const int m = om.dims.m();
    GaussianRational acc;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const AlgebraElement& w = om.at(i, j);
            if (w.is_zero()) continue;
            acc += trace(mul(w, w));
        }
    return acc;
}

TraceFormulas trace_formulas(const CurvaturePoint& c) {
    const Dims& d = c.dims;
    const int lp = d.leaf_rank();
    const int m = d.m();
    const int q = d.q;
    const double fib = static_cast<double>(d.fibre_dim());
    const CurvatureInvariants inv = invariants(c);

    double block_fh = 0.0, block_ff = 0.0, block_hh = 0.0;
    for (int s = 0; s < q; ++s)
        for (int t = 0; t < q; ++t) {
            for (int i = 0; i < lp; ++i) {
                for (int a = lp; a < m; ++a) block_fh += c.Rp(i, a, s, t) * c.Rp(i, a, s, t);
                for (int j = 0; j < lp; ++j) block_ff += c.Rp(i, j, s, t) * c.Rp(i, j, s, t);
            }
            for (int a = lp; a < m; ++a)
                for (int b = lp; b < m; ++b) block_hh += c.Rp(a, b, s, t) * c.Rp(a, b, s, t);
        }

    TraceFormulas f;
    f.tr_e = -fib * inv.r_M / 4.0;
    f.tr_i1_sq = fib / 8.0 * block_fh;
    f.tr_i2_sq = fib / 16.0 * block_ff;
    f.tr_i3_sq = fib / 16.0 * block_hh;
    f.tr_e_sq = fib / 16.0 * (inv.r_M * inv.r_M + inv.rfperp_norm_sq);
    f.tr_omega_sq = -fib / 8.0 * (inv.riem_sq + inv.rfperp_norm_sq);
    return f;
}

double universal_prefactor(const Dims& d) {
    // 1/(2^p pi^(p+q/2)); the exponent is an integer since q is even
    double pip = 1.0;
    for (int k = 0; k < d.p + d.q / 2; ++k) pip *= pi;
    return 1.0 / (std::ldexp(1.0, d.p) * pip);
}

double universal_prefactor_gamma(const Dims& d) {
    return std::pow(4.0 * pi, -d.m() / 2.0) * static_cast<double>(d.fibre_dim());
}

double density_closed_generic(const CurvaturePoint& c, int order,
                              bool include_total_derivatives) {
    require_closed_order(order);
    const Dims& d = c.dims;
    const double fib = static_cast<double>(d.fibre_dim());
    const double pref = std::pow(4.0 * pi, -d.m() / 2.0);
    if (order == 0) return pref * fib;

    const CurvatureInvariants inv = invariants(c);
    const PotentialE e = build_E(c);
    const double tr_e = to_double(trace_E(e));
    if (order == 2) return pref / 6.0 * (inv.r_M * fib + 6.0 * tr_e);

    const double tr_e_sq = to_double(trace_E_sq(e));
    const double tr_om = to_double(trace_omega_sq(build_Omega(c)));
    double acc = 5.0 * inv.r_M * inv.r_M * fib - 2.0 * inv.ric_sq * fib +
                 2.0 * inv.riem_sq * fib + 60.0 * inv.r_M * tr_e + 180.0 * tr_e_sq +
                 30.0 * tr_om;
    if (include_total_derivatives) {
        if (!c.rijij_lap || !c.tr_e_lap)
            throw input_error(
                "total-derivative terms requested but the bulk Laplacian scalars are absent");
        acc += 12.0 * (*c.rijij_lap) * fib + 60.0 * (*c.tr_e_lap);
    }
    return pref / 360.0 * acc;
}

double density_closed_formula(const CurvaturePoint& c, int order) {
    require_closed_order(order);
    const double pref = universal_prefactor(c.dims);
    if (order == 0) return pref;
    const CurvatureInvariants inv = invariants(c);
    if (order == 2) return -pref / 12.0 * inv.r_M;
    return pref / 360.0 *
           (1.25 * inv.r_M * inv.r_M - 2.0 * inv.ric_sq - 1.75 * inv.riem_sq +
            7.5 * inv.rfperp_norm_sq);
}

BoundaryDensity density_boundary_generic(const CurvaturePoint& c, int order,
                                         bool include_total_derivatives) {
    if (order < 0 || order > 4)
        throw input_error("boundary density order must be in 0..4, got " + std::to_string(order));
    const Dims& d = c.dims;
    const double fib = static_cast<double>(d.fibre_dim());
    const double pref_even = std::pow(4.0 * pi, -d.m() / 2.0);
    const double pref_odd = std::pow(4.0 * pi, -(d.m() - 1) / 2.0);

    BoundaryDensity out;
    if (order == 0) {
        out.interior = pref_even * fib;
        return out;
    }

    const BoundaryPoint& b = boundary_of(c);
    const CurvatureInvariants inv = invariants(c);
    const double lt = L_trace(c);

    switch (order) {
        case 1:
            out.boundary = -0.25 * pref_odd * fib;
            break;
        case 2: {
            const double tr_e = to_double(trace_E(build_E(c)));
            out.interior = pref_even / 6.0 * (inv.r_M * fib + 6.0 * tr_e);
            out.boundary = pref_even / 6.0 * 2.0 * lt * fib;
            break;
        }
        case 3: {
            const double tr_e = to_double(trace_E(build_E(c)));
            out.boundary = -0.25 * pref_odd / 96.0 *
                           (96.0 * tr_e + (16.0 * inv.r_M + 8.0 * sum_R_aNaN(c)) * fib +
                            (7.0 * lt * lt - 10.0 * L_sq(c)) * fib);
            break;
        }
        default: {
            out.interior = density_closed_generic(c, 4, include_total_derivatives);
            const double tr_e = to_double(trace_E(build_E(c)));
            // tr(E_;N) in closed form: -2^(p+q) r_M;N / 4
            const double tr_e_normal = -fib * b.r_M_normal / 4.0;
            double acc = -120.0 * tr_e_normal - 18.0 * b.r_M_normal * fib +
                         120.0 * tr_e * lt + 20.0 * inv.r_M * lt * fib +
                         4.0 * sum_R_aNaN(c) * lt * fib - 12.0 * sum_R_aNbN_L(c) * fib +
                         4.0 * sum_R_abcb_L(c) * fib + 24.0 * b.L_trace_lap * fib +
                         (40.0 / 21.0 * L_cubic_aabbcc(c) - 88.0 / 7.0 * L_cubic_ababcc(c) +
                          320.0 / 21.0 * L_cubic_abbcca(c)) *
                             fib;
            out.boundary = pref_even / 360.0 * acc;
            break;
        }
    }
    return out;
}

BoundaryDensity density_boundary_formula(const CurvaturePoint& c, int order) {
    if (order < 0 || order > 4)
        throw input_error("boundary density order must be in 0..4, got " + std::to_string(order));
    const Dims& d = c.dims;
    const double fib = static_cast<double>(d.fibre_dim());
    const double pref = universal_prefactor(d);
    const double pref_even = std::pow(4.0 * pi, -d.m() / 2.0);
    const double pref_odd = std::pow(4.0 * pi, -(d.m() - 1) / 2.0);

    BoundaryDensity out;
    if (order == 0) {
        out.interior = pref;
        return out;
    }

    const BoundaryPoint& b = boundary_of(c);
    const CurvatureInvariants inv = invariants(c);
    const double lt = L_trace(c);

    switch (order) {
        case 1:
            out.boundary = -0.25 * pref_odd * fib;
            break;
        case 2:
            out.interior = -pref / 12.0 * inv.r_M;
            out.boundary = pref / 12.0 * 4.0 * lt;
            break;
        case 3:
            out.boundary = -0.25 * pref_odd / 96.0 * fib *
                           (-8.0 * inv.r_M + 8.0 * sum_R_aNaN(c) + 7.0 * lt * lt -
                            10.0 * L_sq(c));
            break;
        default: {
            out.interior = density_closed_formula(c, 4);
            double acc = -51.0 * b.r_M_normal - 10.0 * inv.r_M * lt +
                         4.0 * sum_R_aNaN(c) * lt - 12.0 * sum_R_aNbN_L(c) +
                         4.0 * sum_R_abcb_L(c) + 24.0 * b.L_trace_lap +
                         40.0 / 21.0 * L_cubic_aabbcc(c) - 88.0 / 7.0 * L_cubic_ababcc(c) +
                         320.0 / 21.0 * L_cubic_abbcca(c);
            out.boundary = pref_even / 360.0 * fib * acc;
            break;
        }
    }
    return out;
}

NormalDerivativeAudit boundary_normal_derivative_audit() { return {}; }

double boundary_normal_derivative_term(const CurvaturePoint& c, double coeff) {
    const double fib = static_cast<double>(c.dims.fibre_dim());
    const double pref_even = std::pow(4.0 * pi, -c.dims.m() / 2.0);
    return pref_even / 360.0 * coeff * fib * boundary_of(c).r_M_normal;
}

HeatCoefficients coefficients_closed(const CurvaturePoint& c, bool generic,
                                     bool include_total_derivatives) {
    HeatCoefficients k;
    const char* tag = generic ? "generic" : "closed-form";
    for (int ord : {0, 2, 4})
        k.a[static_cast<std::size_t>(ord)] =
            (generic ? density_closed_generic(c, ord, include_total_derivatives)
                     : density_closed_formula(c, ord)) *
            c.volume;
    for (auto& p : k.provenance) p = tag;
    return k;
}

HeatCoefficients coefficients_boundary(const CurvaturePoint& c, bool generic,
                                       bool include_total_derivatives) {
    HeatCoefficients k;
    const char* tag = generic ? "generic" : "closed-form";
    for (int ord = 0; ord <= 4; ++ord) {
        const BoundaryDensity den = generic
                                        ? density_boundary_generic(c, ord, include_total_derivatives)
                                        : density_boundary_formula(c, ord);
        k.a[static_cast<std::size_t>(ord)] = den.interior * c.volume + den.boundary * c.area;
    }
    for (auto& p : k.provenance) p = tag;
    return k;
}

double action_asymptotics(const HeatCoefficients& coeffs, const CutoffMoments& moments,
                          double lambda) {
    if (lambda <= 0.0) throw input_error("action scale must be positive");
    double acc = 0.0;
    for (int k = 0; k <= 4; ++k)
        acc += std::pow(lambda, 4 - k) * moments.at(4 - k) * coeffs.a[static_cast<std::size_t>(k)];
    return acc;
}

} // namespace subdirac
