#include "subdirac/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subdirac/errors.hpp"

namespace subdirac {

namespace {

constexpr double pi = std::numbers::pi;

// Gamma(k/2) for the half-integer arguments used here
double gamma_half(int k) {
    switch (k) {
        case 1: return std::sqrt(pi);
        case 2: return 1.0;
        case 3: return std::sqrt(pi) / 2.0;
        case 4: return 1.0;
        default: throw input_error("cutoff moment index must be in 0..4, got " + std::to_string(k));
    }
}

} // namespace

double CutoffMoments::at(int k) const {
    switch (k) {
        case 0: return f0;
        case 1: return f1;
        case 2: return f2;
        case 3: return f3;
        case 4: return f4;
        default: throw input_error("cutoff moment index must be in 0..4, got " + std::to_string(k));
    }
}

CutoffMoments cutoff_moments_named(const std::string& name) {
    CutoffMoments m;
    const double rpi = std::sqrt(pi);
    if (name == "characteristic") {
        m.f0 = 1.0;
        m.f1 = 2.0 / rpi;
        m.f2 = 1.0;
        m.f3 = 4.0 / (3.0 * rpi);
        m.f4 = 0.5;
    } else if (name == "triangle") {
        m.f0 = 1.0;
        m.f1 = 4.0 / (3.0 * rpi);
        m.f2 = 0.5;
        m.f3 = 8.0 / (15.0 * rpi);
        m.f4 = 1.0 / 6.0;
    } else {
        throw input_error("unknown cutoff profile: " + name);
    }
    return m;
}

CutoffMoments cutoff_moments_sampled(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw input_error("cutoff samples: need at least two points");
    std::sort(samples.begin(), samples.end());
    if (samples.front().first != 0.0)
        throw input_error("cutoff samples: the profile must be sampled at s = 0");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].first <= samples[i - 1].first)
            throw input_error("cutoff samples: abscissae must be strictly increasing");

    CutoffMoments m;
    m.f0 = samples.front().second;
    if (samples.back().first > 1.0 + 1e-12)
        m.warnings.push_back("cutoff support extends beyond s = 1");

    for (int k = 1; k <= 4; ++k) {
        const double ka = k / 2.0;
        double integral = 0.0;
        for (std::size_t i = 1; i < samples.size(); ++i) {
            const auto [x0, v0] = samples[i - 1];
            const auto [x1, v1] = samples[i];
            // linear piece f = A + B s, integrated against s^(k/2-1)
            const double slope = (v1 - v0) / (x1 - x0);
            const double offset = v0 - slope * x0;
            integral += offset * (std::pow(x1, ka) - std::pow(x0, ka)) / ka +
                        slope * (std::pow(x1, ka + 1) - std::pow(x0, ka + 1)) / (ka + 1);
        }
        const double value = integral / gamma_half(k);
        switch (k) {
            case 1: m.f1 = value; break;
            case 2: m.f2 = value; break;
            case 3: m.f3 = value; break;
            default: m.f4 = value; break;
        }
    }
    return m;
}

double cutoff_moment_quadrature(const std::function<double(double)>& f, int k,
                                double support_end, int intervals) {
    if (support_end <= 0.0) throw input_error("cutoff quadrature: support end must be positive");
    if (intervals < 2) throw input_error("cutoff quadrature: need at least two intervals");
    if (k == 0) return f(0.0);
    if (intervals % 2 != 0) ++intervals;

    const double upper = std::sqrt(support_end);
    const double h = upper / intervals;
    auto integrand = [&](double u) {
        // u^(k-1) with the convention 0^0 = 1 for k = 1
        return f(u * u) * (k == 1 ? 1.0 : std::pow(u, k - 1));
    };
    double acc = integrand(0.0) + integrand(upper);
    for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
    const double integral = acc * h / 3.0;
    return 2.0 * integral / gamma_half(k);
}

} // namespace subdirac
