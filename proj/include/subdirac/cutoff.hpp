#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace subdirac {

// Gamma-weighted moments of a cut-off profile f:
//   F_k = (1/Gamma(k/2)) \int_0^inf f(s) s^(k/2-1) ds   for k >= 1,
//   F_0 = f(0).
// These weight the half-integer coefficient family in the large-scale
// asymptotics of the cut-off eigenvalue count.
struct CutoffMoments {
    double f0 = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    double f4 = 0.0;

    // non-fatal diagnostics (e.g. support extending beyond s = 1)
    std::vector<std::string> warnings;

    double at(int k) const;
};

// Named profiles with closed-form moments:
//   "characteristic" -- indicator of [0, 1]:  F_k = 2/(k Gamma(k/2))
//   "triangle"       -- (1 - s) on [0, 1]:    F_k = 1/(Gamma(k/2) (k/2)(k/2+1))
CutoffMoments cutoff_moments_named(const std::string& name);

// Piecewise-linear profile through the samples (s_i, f_i).  Samples must
// start at s = 0 and be strictly increasing in s; the profile is taken to be
// zero beyond the last sample.  Moments are exact per-interval
// antiderivatives of the linear pieces.  Support reaching beyond s = 1 is
// legal but recorded as a warning, since the asymptotics assume fast decay.
CutoffMoments cutoff_moments_sampled(std::vector<std::pair<double, double>> samples);

// Quadrature fallback on the substitution s = u^2, which removes the
// endpoint singularity of s^(k/2-1):
//   F_k = (2/Gamma(k/2)) \int_0^sqrt(support_end) f(u^2) u^(k-1) du.
// Composite Simpson; exact for profiles making the integrand a cubic, which
// covers the even moments (and F_3 to rounding) of the characteristic case.
double cutoff_moment_quadrature(const std::function<double(double)>& f, int k,
                                double support_end = 1.0, int intervals = 1 << 12);

} // namespace subdirac
