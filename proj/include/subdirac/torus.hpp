#pragma once

#include <array>
#include <utility>
#include <vector>

#include <json.hpp>

#include "subdirac/dims.hpp"

namespace subdirac {

// Flat four-torus with the trivial foliation (leaves spanned by the first 2p
// coordinates).  The operator square is the flat Laplacian tensored with the
// 2^(p+q) identity, so its spectrum is exact:
//   eigenvalues 4 pi^2 sum_i (k_i / periods_i)^2, k integer vectors,
//   multiplicities 2^(p+q) per lattice point.
struct TorusSpec {
    Dims dims{1, 2};
    std::array<double, 4> periods{1.0, 1.0, 1.0, 1.0};

    void validate() const;
};

// eigenvalue groups of the operator square, ascending, complete up to the cut
struct SpectrumSlice {
    std::vector<std::pair<double, long long>> groups; // (eigenvalue, multiplicity)
};

// hard cap on enumerated lattice boxes
inline constexpr long long lattice_budget = 100'000'000;

// All eigenvalues of the operator square up to cut^2 (cut bounds the
// first-order operator).  Grouping is by exact rational norm key, never by
// floating-point comparison, so multiplicities are exact.
SpectrumSlice torus_eigenvalues(const TorusSpec& t, double cut);

// Lattice heat trace sum(multiplicity * exp(-time * eigenvalue)).  The sum is
// truncated per axis where time * eigenvalue >= 50, leaving a remainder below
// e^-50 * (box size), which is under 1e-12 of the value for all times used
// here.  The parallel flavour splits the leading coordinate across threads.
double torus_heat_trace(const TorusSpec& t, double time);
double torus_heat_trace_serial(const TorusSpec& t, double time);

// Exact count of eigenvalues of the operator square that are <= lambda^2,
// with multiplicity: the sharp-cutoff spectral action.  Serial and parallel
// flavours agree exactly (integer arithmetic).
long long torus_count_action(const TorusSpec& t, double lambda);
long long torus_count_action_serial(const TorusSpec& t, double lambda);

nlohmann::json torus_to_json(const TorusSpec& t);
TorusSpec torus_from_json(const nlohmann::json& j);

} // namespace subdirac
