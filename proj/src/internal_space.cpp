#include "subdirac/internal_space.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "subdirac/errors.hpp"
#include "subdirac/rng.hpp"

namespace subdirac {

namespace {

using std::complex;

constexpr double adjointness_tol = 1e-12;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void check_square(const CMatrix& m, long n, const std::string& what) {
    if (m.rows() != n || m.cols() != n)
        throw input_error(what + ": expected a " + std::to_string(n) + "x" + std::to_string(n) +
                          " matrix");
}

CMatrix random_matrix(long n, std::mt19937_64& rng) {
    CMatrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            const double re = uniform_sym(rng);
            const double im = uniform_sym(rng);
            m(i, j) = complex<double>(re, im);
        }
    return m;
}

} // namespace

void InternalSpace::validate(const Dims& d) const {
    if (n_f < 1) throw input_error("internal space: n_f must be positive");
    const int m = d.m();
    check_square(phi, n_f, "internal space phi");
    if (max_abs(phi - phi.adjoint()) > adjointness_tol)
        throw input_error("internal space: phi must be self-adjoint");
    if (gauge.size() != static_cast<std::size_t>(m))
        throw input_error("internal space: gauge must be an m x m array");
    for (int i = 0; i < m; ++i) {
        if (gauge[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(m))
            throw input_error("internal space: gauge must be an m x m array");
        for (int j = 0; j < m; ++j) {
            const CMatrix& g = gauge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            check_square(g, n_f, "internal space gauge entry");
            if (max_abs(g + g.adjoint()) > adjointness_tol)
                throw input_error("internal space: gauge entries must be anti-self-adjoint");
            const CMatrix& gt = gauge[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (max_abs(g + gt) > adjointness_tol)
                throw input_error("internal space: gauge must be antisymmetric in (i, j)");
        }
    }
    if (commutators.size() != static_cast<std::size_t>(m))
        throw input_error("internal space: commutators must have m entries");
    for (const CMatrix& k : commutators) check_square(k, n_f, "internal space commutator");
}

InternalSpace trivial_internal(const Dims& d, long n_f) {
    const int m = d.m();
    InternalSpace s;
    s.n_f = n_f;
    s.phi = CMatrix::Zero(n_f, n_f);
    s.gauge.assign(static_cast<std::size_t>(m),
                   std::vector<CMatrix>(static_cast<std::size_t>(m), CMatrix::Zero(n_f, n_f)));
    s.commutators.assign(static_cast<std::size_t>(m), CMatrix::Zero(n_f, n_f));
    return s;
}

InternalSpace random_internal(const Dims& d, long n_f, unsigned seed) {
    std::mt19937_64 rng(seed);
    const int m = d.m();
    InternalSpace s = trivial_internal(d, n_f);

    CMatrix raw = random_matrix(n_f, rng);
    s.phi = 0.5 * (raw + raw.adjoint()).eval();

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            raw = random_matrix(n_f, rng);
            CMatrix g = 0.5 * (raw - raw.adjoint()).eval();
            s.gauge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g;
            s.gauge[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -g;
        }

    for (int i = 0; i < m; ++i) {
        raw = random_matrix(n_f, rng);
        s.commutators[static_cast<std::size_t>(i)] = 0.5 * (raw + raw.adjoint()).eval();
    }
    return s;
}

CMatrix build_E_phi(const CurvaturePoint& c, const InternalSpace& s, const MatrixRep& rep) {
    const Dims& d = c.dims;
    if (d != rep.dims()) throw dimension_error("build_E_phi: representation dims mismatch");
    s.validate(d);
    const int m = d.m();
    const long fib = d.fibre_dim();
    const CMatrix id_f = CMatrix::Identity(s.n_f, s.n_f);
    const CMatrix id_b = CMatrix::Identity(fib, fib);

    CMatrix out = kron(rep.rep_of(build_E(c).full), id_f);

    for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b) {
            if (a == b) continue;
            const CMatrix& g =
                s.gauge[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
            if (max_abs(g) == 0.0) continue;
            const CMatrix cc =
                rep.rep_of_word({Generator::ambient_c(d, a), Generator::ambient_c(d, b)});
            out -= 0.5 * kron(cc, g);
        }

    const CMatrix gamma = rep.rep_of(volume_involution(d));
    for (int i = 1; i <= m; ++i) {
        const CMatrix& k = s.commutators[static_cast<std::size_t>(i - 1)];
        if (max_abs(k) == 0.0) continue;
        out += kron((gamma * rep.generator_matrix(Generator::ambient_c(d, i))).eval(), k);
    }

    out -= kron(id_b, (s.phi * s.phi).eval());
    return out;
}

TraceComparison trace_E_phi(const CurvaturePoint& c, const InternalSpace& s,
                            const MatrixRep& rep) {
    const double fib = static_cast<double>(c.dims.fibre_dim());
    const double r_m = invariants(c).r_M;
    const double tr_phi2 = (s.phi * s.phi).trace().real();

    TraceComparison out;
    out.oracle = build_E_phi(c, s, rep).trace().real();
    out.reference = static_cast<double>(s.n_f) * fib / 4.0 * r_m - fib * tr_phi2;
    out.corrected = -static_cast<double>(s.n_f) * fib / 4.0 * r_m - fib * tr_phi2;
    return out;
}

PairComparison trace_E_phi_sq(const CurvaturePoint& c, const InternalSpace& s,
                              const MatrixRep& rep) {
    const Dims& d = c.dims;
    const int m = d.m();
    const double fib = static_cast<double>(d.fibre_dim());
    const CurvatureInvariants inv = invariants(c);

    double gauge_sq = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const CMatrix& g = s.gauge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            gauge_sq += (g * g).trace().real();
        }
    double k_sq = 0.0;
    for (const CMatrix& k : s.commutators) k_sq += (k * k).trace().real();
    const double tr_phi2 = (s.phi * s.phi).trace().real();
    const double tr_phi4 = (s.phi * s.phi * s.phi * s.phi).trace().real();

    PairComparison out;
    const CMatrix e = build_E_phi(c, s, rep);
    out.oracle = (e * e).trace().real();
    out.formula = static_cast<double>(s.n_f) * fib / 16.0 *
                      (inv.r_M * inv.r_M + inv.rfperp_norm_sq) -
                  fib / 2.0 * gauge_sq + fib / 2.0 * inv.r_M * tr_phi2 + fib * tr_phi4 +
                  fib * k_sq;
    return out;
}

PairComparison twisted_omega_trace(const CurvaturePoint& c, const InternalSpace& s,
                                   const MatrixRep& rep) {
    const Dims& d = c.dims;
    if (d != rep.dims()) throw dimension_error("twisted_omega_trace: representation dims mismatch");
    s.validate(d);
    const int m = d.m();
    const double fib = static_cast<double>(d.fibre_dim());
    const CurvatureInvariants inv = invariants(c);
    const CMatrix id_f = CMatrix::Identity(s.n_f, s.n_f);
    const CMatrix id_b = CMatrix::Identity(d.fibre_dim(), d.fibre_dim());

    const CurvatureTwoForm om = build_Omega(c);
    double oracle = 0.0;
    double gauge_sq = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const CMatrix& g = s.gauge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const CMatrix twisted = kron(rep.rep_of(om.at(i, j)), id_f) + kron(id_b, g);
            oracle += (twisted * twisted).trace().real();
            gauge_sq += (g * g).trace().real();
        }

    PairComparison out;
    out.oracle = oracle;
    out.formula = -static_cast<double>(s.n_f) * fib / 8.0 * (inv.riem_sq + inv.rfperp_norm_sq) +
                  fib * gauge_sq;
    return out;
}

void SMParams::validate() const {
    const double norms[] = {norm_G_sq, norm_F1_sq, norm_B_sq, phi_sq, phi_quart, dphi_sq};
    for (double v : norms)
        if (v < 0.0) throw input_error("parameterized traces: squared norms must be nonnegative");
}

SMTraces sm_trace_inputs(const SMParams& p) {
    p.validate();
    SMTraces t;
    t.gauge_trace = 48.0 / 5.0 * p.g3 * p.g3 * p.norm_G_sq +
                    48.0 / 5.0 * p.g2 * p.g2 * p.norm_F1_sq + 16.0 * p.g1 * p.g1 * p.norm_B_sq;
    t.k_trace = 4.0 * p.a * p.dphi_sq;
    t.phi2_trace = 4.0 * p.a * p.phi_sq + 2.0 * p.c;
    t.phi4_trace = 4.0 * p.b * p.phi_quart + 8.0 * p.e * p.phi_sq + 2.0 * p.d;
    return t;
}

SMCoefficients sm_coefficients(const Dims& d, const SMParams& p, bool corrected_signs) {
    if (d.m() != 4)
        throw unsupported_dimension_error("parameterized evaluators are wired for m = 4");
    p.validate();
    const double pref = universal_prefactor(d);

    SMCoefficients out;
    out.corrected_signs = corrected_signs;
    out.a0_density = static_cast<double>(sm_internal_dim) * pref;
    out.a2_density = pref * ((corrected_signs ? -8.0 : 40.0) * p.r_M - 4.0 * p.a * p.phi_sq -
                             2.0 * p.c);
    // With the reference sign of the scalar-curvature term in tr(E_Phi), the
    // r_M^2 coefficient assembles to 3000; the corrected sign gives 120.
    const double r_m_sq_coeff = corrected_signs ? 120.0 : 3000.0;
    out.a4_density =
        pref / 360.0 *
        (r_m_sq_coeff * p.r_M * p.r_M - 192.0 * p.ric_sq - 168.0 * p.riem_sq +
         720.0 * p.rfperp_norm_sq + 120.0 * p.a * p.r_M * p.phi_sq + 60.0 * p.c * p.r_M -
         576.0 * p.g3 * p.g3 * p.norm_G_sq - 576.0 * p.g2 * p.g2 * p.norm_F1_sq -
         960.0 * p.g1 * p.g1 * p.norm_B_sq + 720.0 * p.b * p.phi_quart +
         1440.0 * p.e * p.phi_sq + 360.0 * p.d + 720.0 * p.a * p.dphi_sq);
    out.i_new_density = 2.0 * pref * p.rfperp_norm_sq;
    return out;
}

double sm_a4_reassembled(const Dims& d, const SMParams& p, bool corrected_signs) {
    if (d.m() != 4)
        throw unsupported_dimension_error("parameterized evaluators are wired for m = 4");
    const double fib = static_cast<double>(d.fibre_dim());
    const double nf = static_cast<double>(sm_internal_dim);
    const SMTraces t = sm_trace_inputs(p);

    const double tr_e = (corrected_signs ? -1.0 : 1.0) * nf * fib / 4.0 * p.r_M -
                        fib * t.phi2_trace;
    const double tr_e_sq = nf * fib / 16.0 * (p.r_M * p.r_M + p.rfperp_norm_sq) -
                           fib / 2.0 * t.gauge_trace + fib / 2.0 * p.r_M * t.phi2_trace +
                           fib * t.phi4_trace + fib * t.k_trace;
    const double tr_om_sq = -nf * fib / 8.0 * (p.riem_sq + p.rfperp_norm_sq) +
                            fib * t.gauge_trace;

    const double acc = (5.0 * p.r_M * p.r_M - 2.0 * p.ric_sq + 2.0 * p.riem_sq) * fib * nf +
                       60.0 * p.r_M * tr_e + 180.0 * tr_e_sq + 30.0 * tr_om_sq;
    return std::pow(4.0 * std::numbers::pi, -2.0) / 360.0 * acc;
}

namespace {

nlohmann::json matrix_to_json(const CMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (long i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (long j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const nlohmann::json& j, long n, const std::string& what) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(n))
        throw input_error(what + ": expected " + std::to_string(n) + " rows");
    CMatrix m(n, n);
    for (long i = 0; i < n; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
            throw input_error(what + ": expected " + std::to_string(n) + " columns");
        for (long jj = 0; jj < n; ++jj) {
            const auto& cell = row[static_cast<std::size_t>(jj)];
            if (!cell.is_array() || cell.size() != 2)
                throw input_error(what + ": entries must be [re, im] pairs");
            m(i, jj) = std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

} // namespace

nlohmann::json internal_to_json(const InternalSpace& s) {
    nlohmann::json j;
    j["n_f"] = s.n_f;
    j["phi"] = matrix_to_json(s.phi);
    nlohmann::json gauge = nlohmann::json::array();
    for (const auto& row : s.gauge) {
        nlohmann::json grow = nlohmann::json::array();
        for (const auto& g : row) grow.push_back(matrix_to_json(g));
        gauge.push_back(std::move(grow));
    }
    j["gauge"] = std::move(gauge);
    nlohmann::json comms = nlohmann::json::array();
    for (const auto& k : s.commutators) comms.push_back(matrix_to_json(k));
    j["commutators"] = std::move(comms);
    return j;
}

InternalSpace internal_from_json(const Dims& d, const nlohmann::json& j) {
    try {
        InternalSpace s;
        s.n_f = j.at("n_f").get<long>();
        if (s.n_f < 1) throw input_error("internal space: n_f must be positive");
        const int m = d.m();
        s.phi = matrix_from_json(j.at("phi"), s.n_f, "phi");
        s.gauge.assign(static_cast<std::size_t>(m),
                       std::vector<CMatrix>(static_cast<std::size_t>(m),
                                            CMatrix::Zero(s.n_f, s.n_f)));
        if (j.contains("gauge")) {
            const auto& gauge = j.at("gauge");
            if (!gauge.is_array() || gauge.size() != static_cast<std::size_t>(m))
                throw input_error("gauge: expected an m x m array");
            for (int i = 0; i < m; ++i) {
                const auto& row = gauge[static_cast<std::size_t>(i)];
                if (!row.is_array() || row.size() != static_cast<std::size_t>(m))
                    throw input_error("gauge: expected an m x m array");
                for (int jj = 0; jj < m; ++jj)
                    s.gauge[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] =
                        matrix_from_json(row[static_cast<std::size_t>(jj)], s.n_f, "gauge entry");
            }
        }
        s.commutators.assign(static_cast<std::size_t>(m), CMatrix::Zero(s.n_f, s.n_f));
        if (j.contains("commutators")) {
            const auto& comms = j.at("commutators");
            if (!comms.is_array() || comms.size() != static_cast<std::size_t>(m))
                throw input_error("commutators: expected m entries");
            for (int i = 0; i < m; ++i)
                s.commutators[static_cast<std::size_t>(i)] =
                    matrix_from_json(comms[static_cast<std::size_t>(i)], s.n_f, "commutator");
        }
        s.validate(d);
        return s;
    } catch (const nlohmann::json::exception& ex) {
        throw input_error(std::string("internal space json: ") + ex.what());
    }
}

nlohmann::json sm_params_to_json(const SMParams& p) {
    return nlohmann::json{{"a", p.a},
                          {"b", p.b},
                          {"c", p.c},
                          {"d", p.d},
                          {"e", p.e},
                          {"g1", p.g1},
                          {"g2", p.g2},
                          {"g3", p.g3},
                          {"norm_G_sq", p.norm_G_sq},
                          {"norm_F1_sq", p.norm_F1_sq},
                          {"norm_B_sq", p.norm_B_sq},
                          {"phi_sq", p.phi_sq},
                          {"phi_quart", p.phi_quart},
                          {"dphi_sq", p.dphi_sq},
                          {"r_M", p.r_M},
                          {"ric_sq", p.ric_sq},
                          {"riem_sq", p.riem_sq},
                          {"rfperp_norm_sq", p.rfperp_norm_sq}};
}

SMParams sm_params_from_json(const nlohmann::json& j) {
    try {
        SMParams p;
        auto read = [&](const char* key, double& slot) {
            if (j.contains(key)) slot = j.at(key).get<double>();
        };
        read("a", p.a);
        read("b", p.b);
        read("c", p.c);
        read("d", p.d);
        read("e", p.e);
        read("g1", p.g1);
        read("g2", p.g2);
        read("g3", p.g3);
        read("norm_G_sq", p.norm_G_sq);
        read("norm_F1_sq", p.norm_F1_sq);
        read("norm_B_sq", p.norm_B_sq);
        read("phi_sq", p.phi_sq);
        read("phi_quart", p.phi_quart);
        read("dphi_sq", p.dphi_sq);
        read("r_M", p.r_M);
        read("ric_sq", p.ric_sq);
        read("riem_sq", p.riem_sq);
        read("rfperp_norm_sq", p.rfperp_norm_sq);
        p.validate();
        return p;
    } catch (const nlohmann::json::exception& ex) {
        throw input_error(std::string("parameter json: ") + ex.what());
    }
}

} // namespace subdirac
