#include "subdirac/curvature.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "subdirac/rng.hpp"

namespace subdirac {

namespace {

inline int idx4(int n, int i, int j, int k, int l) { return ((i * n + j) * n + k) * n + l; }

} // namespace

CurvaturePoint::CurvaturePoint(const Dims& d)
    : dims(d),
      riemann(static_cast<std::size_t>(d.m()) * d.m() * d.m() * d.m(), 0.0),
      rfperp(static_cast<std::size_t>(d.m()) * d.m() * d.q * d.q, 0.0) {}

std::vector<double> project_riemann_symmetries(const std::vector<double>& raw, int m) {
    const std::size_t size = static_cast<std::size_t>(m) * m * m * m;
    if (raw.size() != size) throw input_error("project_riemann_symmetries: wrong array size");

    // pair-symmetry part: antisymmetrize in (ij) and (kl), symmetrize pair swap
    std::vector<double> a(size, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    a[idx4(m, i, j, k, l)] =
                        (raw[idx4(m, i, j, k, l)] - raw[idx4(m, j, i, k, l)] -
                         raw[idx4(m, i, j, l, k)] + raw[idx4(m, j, i, l, k)] +
                         raw[idx4(m, k, l, i, j)] - raw[idx4(m, l, k, i, j)] -
                         raw[idx4(m, k, l, j, i)] + raw[idx4(m, l, k, j, i)]) /
                        8.0;

    // remove the fully antisymmetric part; what is left satisfies first Bianchi
    std::vector<double> out(size, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const double bianchi = (a[idx4(m, i, j, k, l)] + a[idx4(m, i, k, l, j)] +
                                            a[idx4(m, i, l, j, k)]) /
                                           3.0;
                    out[idx4(m, i, j, k, l)] = a[idx4(m, i, j, k, l)] - bianchi;
                }
    return out;
}

double riemann_symmetry_deviation(const std::vector<double>& r, int m) {
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const double v = r[idx4(m, i, j, k, l)];
                    worst = std::max(worst, std::abs(v + r[idx4(m, j, i, k, l)]));
                    worst = std::max(worst, std::abs(v + r[idx4(m, i, j, l, k)]));
                    worst = std::max(worst, std::abs(v - r[idx4(m, k, l, i, j)]));
                    worst = std::max(worst, std::abs(v + r[idx4(m, i, k, l, j)] +
                                                     r[idx4(m, i, l, j, k)]));
                }
    return worst;
}

CurvaturePoint flat_point(const Dims& d) { return CurvaturePoint(d); }

CurvaturePoint constant_curvature(const Dims& d, double kappa) {
    CurvaturePoint c(d);
    const int m = d.m();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            c.R(i, j, i, j) = kappa;
            c.R(i, j, j, i) = -kappa;
        }
    c.scalar_curv = kappa * m * (m - 1);
    return c;
}

CurvaturePoint random_point(const Dims& d, unsigned seed, bool with_boundary) {
    std::mt19937_64 rng(seed);
    const int m = d.m();
    CurvaturePoint c(d);

    std::vector<double> raw(c.riemann.size());
    for (auto& v : raw) v = uniform_sym(rng);
    c.riemann = project_riemann_symmetries(raw, m);

    // fill an exactly antisymmetric normal curvature: one draw per ordered
    // representative (a < b, s < t), mirrored with exact sign flips
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int s = 0; s < d.q; ++s)
                for (int t = s + 1; t < d.q; ++t) {
                    const double v = uniform_sym(rng);
                    c.Rp(a, b, s, t) = v;
                    c.Rp(b, a, s, t) = -v;
                    c.Rp(a, b, t, s) = -v;
                    c.Rp(b, a, t, s) = v;
                }

    double contraction = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) contraction += c.R(i, j, i, j);
    c.scalar_curv = contraction;

    if (with_boundary) {
        BoundaryPoint b;
        b.second_form.assign(static_cast<std::size_t>(m - 1) * (m - 1), 0.0);
        for (int a = 0; a < m - 1; ++a)
            for (int e = a; e < m - 1; ++e) {
                const double v = uniform_sym(rng);
                b.L(m, a, e) = v;
                b.L(m, e, a) = v;
            }
        b.r_M_normal = uniform_sym(rng);
        b.L_trace_lap = uniform_sym(rng);
        c.boundary = std::move(b);
    }
    return c;
}

CurvatureInvariants invariants(const CurvaturePoint& c) {
    const int m = c.m();
    CurvatureInvariants inv;
    inv.r_M = c.scalar_curv;

    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            double ric = 0.0;
            for (int i = 0; i < m; ++i) ric += c.R(i, j, i, k);
            inv.ric_sq += ric * ric;
        }

    for (double v : c.riemann) inv.riem_sq += v * v;

    // the ambient double sum over (a, b) realizes the 2-sum(f,h) weighting
    for (double v : c.rfperp) inv.rfperp_norm_sq += v * v;
    return inv;
}

double sum_R_aNaN(const CurvaturePoint& c) {
    const int N = c.m() - 1;
    double s = 0.0;
    for (int a = 0; a < N; ++a) s += c.R(a, N, a, N);
    return s;
}

double sum_R_aNbN_L(const CurvaturePoint& c) {
    if (!c.boundary) throw input_error("boundary data required");
    const int N = c.m() - 1;
    double s = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) s += c.R(a, N, b, N) * c.boundary->L(c.m(), a, b);
    return s;
}

double sum_R_abcb_L(const CurvaturePoint& c) {
    if (!c.boundary) throw input_error("boundary data required");
    const int N = c.m() - 1;
    double s = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int e = 0; e < N; ++e) s += c.R(a, b, e, b) * c.boundary->L(c.m(), a, e);
    return s;
}

double L_trace(const CurvaturePoint& c) {
    if (!c.boundary) throw input_error("boundary data required");
    const int N = c.m() - 1;
    double s = 0.0;
    for (int a = 0; a < N; ++a) s += c.boundary->L(c.m(), a, a);
    return s;
}

double L_sq(const CurvaturePoint& c) {
    if (!c.boundary) throw input_error("boundary data required");
    double s = 0.0;
    for (double v : c.boundary->second_form) s += v * v;
    return s;
}

double L_cubic_aabbcc(const CurvaturePoint& c) {
    const double t = L_trace(c);
    return t * t * t;
}

double L_cubic_ababcc(const CurvaturePoint& c) { return L_sq(c) * L_trace(c); }

double L_cubic_abbcca(const CurvaturePoint& c) {
    if (!c.boundary) throw input_error("boundary data required");
    const int N = c.m() - 1;
    double s = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int e = 0; e < N; ++e)
                s += c.boundary->L(c.m(), a, b) * c.boundary->L(c.m(), b, e) *
                     c.boundary->L(c.m(), e, a);
    return s;
}

nlohmann::json curvature_to_json(const CurvaturePoint& c) {
    using nlohmann::json;
    const int m = c.m();
    json jr = json::array();
    for (int i = 0; i < m; ++i) {
        json ji = json::array();
        for (int j = 0; j < m; ++j) {
            json jj = json::array();
            for (int k = 0; k < m; ++k) {
                json jk = json::array();
                for (int l = 0; l < m; ++l) jk.push_back(c.R(i, j, k, l));
                jj.push_back(std::move(jk));
            }
            ji.push_back(std::move(jj));
        }
        jr.push_back(std::move(ji));
    }

    json jp = json::array();
    for (int a = 0; a < m; ++a) {
        json ja = json::array();
        for (int b = 0; b < m; ++b) {
            json jb = json::array();
            for (int s = 0; s < c.dims.q; ++s) {
                json js = json::array();
                for (int t = 0; t < c.dims.q; ++t) js.push_back(c.Rp(a, b, s, t));
                jb.push_back(std::move(js));
            }
            ja.push_back(std::move(jb));
        }
        jp.push_back(std::move(ja));
    }

    json out{{"p", c.dims.p},
             {"q", c.dims.q},
             {"riemann", std::move(jr)},
             {"rfperp", std::move(jp)},
             {"scalar_curvature", c.scalar_curv}};
    if (c.rijij_lap) out["rijij_lap"] = *c.rijij_lap;
    if (c.tr_e_lap) out["trE_lap"] = *c.tr_e_lap;
    if (c.volume != 1.0) out["volume"] = c.volume;
    if (c.boundary) {
        const int n = m - 1;
        nlohmann::json jL = json::array();
        for (int a = 0; a < n; ++a) {
            json row = json::array();
            for (int b = 0; b < n; ++b) row.push_back(c.boundary->L(m, a, b));
            jL.push_back(std::move(row));
        }
        out["boundary"] = json{{"L", std::move(jL)},
                               {"rM_normal", c.boundary->r_M_normal},
                               {"L_trace_lap", c.boundary->L_trace_lap}};
        if (c.area != 1.0) out["boundary"]["area"] = c.area;
    }
    return out;
}

CurvaturePoint curvature_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("q") || !j.contains("riemann") ||
        !j.contains("rfperp"))
        throw input_error("curvature JSON needs keys p, q, riemann, rfperp");

    Dims d;
    try {
        d = Dims(j.at("p").get<int>(), j.at("q").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("curvature JSON: ") + e.what());
    }

    CurvaturePoint c(d);
    const int m = d.m();
    try {
        const auto& jr = j.at("riemann");
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    for (int n = 0; n < m; ++n)
                        c.R(i, k, l, n) = jr.at(i).at(k).at(l).at(n).get<double>();

        const auto& jp = j.at("rfperp");
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int s = 0; s < d.q; ++s)
                    for (int t = 0; t < d.q; ++t)
                        c.Rp(a, b, s, t) = jp.at(a).at(b).at(s).at(t).get<double>();

        if (j.contains("scalar_curvature")) {
            c.scalar_curv = j.at("scalar_curvature").get<double>();
        } else {
            double contraction = 0.0;
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k) contraction += c.R(i, k, i, k);
            c.scalar_curv = contraction;
        }
        if (j.contains("rijij_lap")) c.rijij_lap = j.at("rijij_lap").get<double>();
        if (j.contains("trE_lap")) c.tr_e_lap = j.at("trE_lap").get<double>();
        if (j.contains("volume")) c.volume = j.at("volume").get<double>();

        if (j.contains("boundary")) {
            const auto& jb = j.at("boundary");
            BoundaryPoint b;
            const int n = m - 1;
            b.second_form.assign(static_cast<std::size_t>(n) * n, 0.0);
            for (int a = 0; a < n; ++a)
                for (int e = 0; e < n; ++e) b.L(m, a, e) = jb.at("L").at(a).at(e).get<double>();
            b.r_M_normal = jb.value("rM_normal", 0.0);
            b.L_trace_lap = jb.value("L_trace_lap", 0.0);
            if (jb.contains("area")) c.area = jb.at("area").get<double>();
            c.boundary = std::move(b);
        }
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("curvature JSON: ") + e.what());
    }
    return c;
}

} // namespace subdirac
