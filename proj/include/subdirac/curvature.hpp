#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "subdirac/dims.hpp"

namespace subdirac {

// Boundary data at a point of the boundary: second fundamental form L (a
// symmetric (m-1) x (m-1) matrix in a boundary-adapted frame, N = e_m the
// inward normal), the normal derivative of the scalar curvature, and the
// boundary Laplacian trace L_aa;bb.
struct BoundaryPoint {
    std::vector<double> second_form; // (m-1)^2, symmetric
    double r_M_normal = 0.0;         // r_M;N
    double L_trace_lap = 0.0;        // L_aa;bb

    int side(int m) const { return m - 1; }
    double L(int m, int a, int b) const { return second_form[a * side(m) + b]; }
    double& L(int m, int a, int b) { return second_form[a * side(m) + b]; }
};

// Pointwise curvature data of a foliated configuration: ambient Riemann
// components R_ijkl (all symmetries enforced by projection), the normal
// bundle curvature components <R_perp(e_a, e_b) h_t, h_s> stored as
// rfperp[a][b][s][t], and the scalar curvature r_M.
//
// Component convention: constant curvature kappa is stored as
// R_ijkl = kappa (delta_ik delta_jl - delta_il delta_jk), so the stored
// contraction sum_ij R_ijij equals +r_M.  The generic heat-coefficient
// evaluator contracts with the opposite sign (see heat.hpp).
struct CurvaturePoint {
    Dims dims;
    std::vector<double> riemann; // m^4
    std::vector<double> rfperp;  // m * m * q * q
    double scalar_curv = 0.0;

    // optional total-derivative context scalars for the order-4 integrand
    std::optional<double> rijij_lap; // Laplacian of the stored contraction sum_ij R_ijij (= r_M)
    std::optional<double> tr_e_lap;  // bulk term tr E_;kk

    std::optional<BoundaryPoint> boundary;

    // optional integration weights used when assembling actions
    double volume = 1.0;
    double area = 1.0;

    explicit CurvaturePoint(const Dims& d);

    int m() const { return dims.m(); }

    double R(int i, int j, int k, int l) const {
        const int n = m();
        return riemann[((i * n + j) * n + k) * n + l];
    }
    double& R(int i, int j, int k, int l) {
        const int n = m();
        return riemann[((i * n + j) * n + k) * n + l];
    }

    double Rp(int a, int b, int s, int t) const {
        const int n = m();
        return rfperp[((a * n + b) * dims.q + s) * dims.q + t];
    }
    double& Rp(int a, int b, int s, int t) {
        const int n = m();
        return rfperp[((a * n + b) * dims.q + s) * dims.q + t];
    }
};

struct CurvatureInvariants {
    double r_M = 0.0;           // scalar curvature
    double ric_sq = 0.0;        // R_ijik R_ljlk
    double riem_sq = 0.0;       // R_ijkl R_ijkl
    double rfperp_norm_sq = 0.0; // 2*sum(f,h) + sum(f,f) + sum(h,h) of squares
};

// Orthogonal projection of a raw m^4 array onto tensors with the Riemann
// symmetries: antisymmetry in both pairs, pair exchange, first Bianchi.
std::vector<double> project_riemann_symmetries(const std::vector<double>& raw, int m);

// worst violation of the four symmetry relations; tests pin this to 1e-12
double riemann_symmetry_deviation(const std::vector<double>& r, int m);

CurvaturePoint flat_point(const Dims& d);
CurvaturePoint constant_curvature(const Dims& d, double kappa);

// Deterministic pseudo-random point: projected Riemann tensor, exactly
// antisymmetrized normal curvature, scalar curvature set by the stored
// contraction convention.  with_boundary attaches random boundary data.
CurvaturePoint random_point(const Dims& d, unsigned seed, bool with_boundary = false);

CurvatureInvariants invariants(const CurvaturePoint& c);

// boundary contractions shared by the generic and formula evaluators
double sum_R_aNaN(const CurvaturePoint& c);
double sum_R_aNbN_L(const CurvaturePoint& c);
double sum_R_abcb_L(const CurvaturePoint& c);
double L_trace(const CurvaturePoint& c);
double L_sq(const CurvaturePoint& c);
double L_cubic_aabbcc(const CurvaturePoint& c);
double L_cubic_ababcc(const CurvaturePoint& c);
double L_cubic_abbcca(const CurvaturePoint& c);

nlohmann::json curvature_to_json(const CurvaturePoint& c);
CurvaturePoint curvature_from_json(const nlohmann::json& j);

} // namespace subdirac
