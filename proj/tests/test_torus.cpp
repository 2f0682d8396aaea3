#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <json.hpp>

#include "subdirac/errors.hpp"
#include "subdirac/torus.hpp"

using namespace subdirac;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

TorusSpec unit_torus() { return TorusSpec{}; }

// number of lattice points inside the closed ball, counted the slow naive way
long long naive_count(const TorusSpec& t, double lambda) {
    const double r2 = lambda * lambda / (4.0 * kPi * kPi);
    std::array<int, 4> lim{};
    for (int i = 0; i < 4; ++i)
        lim[i] = static_cast<int>(std::ceil(lambda * t.periods[i] / (2.0 * kPi))) + 1;
    long long points = 0;
    for (int k0 = -lim[0]; k0 <= lim[0]; ++k0)
        for (int k1 = -lim[1]; k1 <= lim[1]; ++k1)
            for (int k2 = -lim[2]; k2 <= lim[2]; ++k2)
                for (int k3 = -lim[3]; k3 <= lim[3]; ++k3) {
                    const double n =
                        k0 * k0 / (t.periods[0] * t.periods[0]) +
                        k1 * k1 / (t.periods[1] * t.periods[1]) +
                        k2 * k2 / (t.periods[2] * t.periods[2]) +
                        k3 * k3 / (t.periods[3] * t.periods[3]);
                    if (n <= r2) ++points;
                }
    return points * t.dims.fibre_dim();
}

} // namespace

TEST_CASE("validation rejects bad specifications") {
    TorusSpec t = unit_torus();
    CHECK_NOTHROW(t.validate());

    t.dims = Dims{1, 4}; // ambient dimension six
    CHECK_THROWS_AS(t.validate(), unsupported_dimension_error);

    t = unit_torus();
    t.periods[2] = 0.0;
    CHECK_THROWS_AS(t.validate(), input_error);
    t.periods[2] = -1.0;
    CHECK_THROWS_AS(t.validate(), input_error);
}

TEST_CASE("first spectral shells of the unit torus") {
    const SpectrumSlice s = torus_eigenvalues(unit_torus(), 12.0);
    REQUIRE(s.groups.size() >= 3);

    CHECK(s.groups[0].first == 0.0);
    CHECK(s.groups[0].second == 8); // 2^(p+q) zero modes

    // norm 1 shell: 8 lattice points, eigenvalue 4 pi^2
    CHECK(s.groups[1].first == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-13));
    CHECK(s.groups[1].second == 64);

    // norm 2 shell: 24 lattice points, eigenvalue 8 pi^2
    CHECK(s.groups[2].first == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-13));
    CHECK(s.groups[2].second == 192);

    // groups are strictly ascending
    for (std::size_t i = 1; i < s.groups.size(); ++i)
        CHECK(s.groups[i - 1].first < s.groups[i].first);
}

TEST_CASE("doubling all periods quarters every eigenvalue") {
    TorusSpec doubled = unit_torus();
    for (double& l : doubled.periods) l = 2.0;

    const SpectrumSlice a = torus_eigenvalues(unit_torus(), 10.0);
    const SpectrumSlice b = torus_eigenvalues(doubled, 5.0);
    REQUIRE(a.groups.size() == b.groups.size());
    for (std::size_t i = 0; i < a.groups.size(); ++i) {
        CHECK(b.groups[i].first == doctest::Approx(a.groups[i].first / 4.0).epsilon(1e-13));
        CHECK(b.groups[i].second == a.groups[i].second);
    }
}

TEST_CASE("frozen eigenvalue counts on the unit torus") {
    const TorusSpec t = unit_torus();
    CHECK(torus_count_action(t, 1.0) == 8);
    CHECK(torus_count_action(t, 6.3) == 72);
    CHECK(torus_count_action(t, 50.0) == 161288);
    CHECK(torus_count_action(t, 100.0) == 2537352);
    CHECK(torus_count_action(t, 200.0) == 40509512);
}

TEST_CASE("count agrees with a naive direct enumeration") {
    TorusSpec t = unit_torus();
    CHECK(torus_count_action(t, 9.0) == naive_count(t, 9.0));
    t.periods = {0.8, 1.3, 1.0, 0.6};
    CHECK(torus_count_action(t, 11.0) == naive_count(t, 11.0));
}

TEST_CASE("count approaches the volume asymptotics") {
    // leading term: 2^(p+q) Lambda^4 vol / (32 pi^2); relative error decays
    const TorusSpec t = unit_torus();
    const auto weyl = [&](double lambda) {
        return 8.0 * lambda * lambda * lambda * lambda / (32.0 * kPi * kPi);
    };
    const double e50 = std::abs(161288.0 - weyl(50.0)) / weyl(50.0);
    const double e100 = std::abs(2537352.0 - weyl(100.0)) / weyl(100.0);
    const double e200 = std::abs(40509512.0 - weyl(200.0)) / weyl(200.0);
    CHECK(e50 < 0.05);
    CHECK(e100 < e50);
    CHECK(e200 < e100);
    CHECK(e200 < 0.001);
    CHECK(torus_count_action(t, 200.0) == 40509512);
}

TEST_CASE("serial and parallel counts agree exactly") {
    TorusSpec t = unit_torus();
    for (double lambda : {1.0, 6.3, 17.0, 60.0})
        CHECK(torus_count_action(t, lambda) == torus_count_action_serial(t, lambda));
    t.periods = {1.1, 0.7, 1.0, 1.4};
    CHECK(torus_count_action(t, 40.0) == torus_count_action_serial(t, 40.0));
}

TEST_CASE("frozen heat trace values on the unit torus") {
    const TorusSpec t = unit_torus();
    // theta-function value: sum over Z^4 of exp(-0.01 * 4 pi^2 |k|^2), times 8
    const double reference = 506.6059182679746526;
    CHECK(torus_heat_trace(t, 0.01) == doctest::Approx(reference).epsilon(1e-12));

    // at large time only the zero modes survive
    CHECK(torus_heat_trace(t, 2.0) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("small-time heat trace matches the volume asymptotics") {
    const TorusSpec t = unit_torus();
    const double time = 0.01;
    const double lhs = time * time * torus_heat_trace(t, time);
    const double rhs = 8.0 / (16.0 * kPi * kPi); // 2^(p+q) vol / (4 pi)^2
    CHECK(std::abs(lhs - rhs) / rhs <= 1e-9);
}

TEST_CASE("heat trace is decreasing and convex in time") {
    const TorusSpec t = unit_torus();
    const std::vector<double> times = {0.05, 0.1, 0.2, 0.4, 0.8};
    std::vector<double> values;
    for (double tau : times) values.push_back(torus_heat_trace(t, tau));
    for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] < values[i - 1]);
    // convexity on the equally-ratioed grid: midpoint value below the chord
    CHECK(values[2] < 0.5 * (values[1] + values[3]));
}

TEST_CASE("serial and parallel heat traces agree") {
    TorusSpec t = unit_torus();
    for (double tau : {0.01, 0.05, 0.5}) {
        const double a = torus_heat_trace(t, tau);
        const double b = torus_heat_trace_serial(t, tau);
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)));
    }
    t.periods = {1.2, 0.9, 1.0, 0.8};
    const double a = torus_heat_trace(t, 0.02);
    const double b = torus_heat_trace_serial(t, 0.02);
    CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)));
}

TEST_CASE("rescaling periods rescales the heat trace through the time") {
    // T_{c L}(c^2 t) = T_L(t): eigenvalues scale by 1/c^2
    TorusSpec scaled = unit_torus();
    for (double& l : scaled.periods) l = 1.5;
    const double lhs = torus_heat_trace(scaled, 0.09);
    const double rhs = torus_heat_trace(unit_torus(), 0.04);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("budget violations raise resource errors") {
    const TorusSpec t = unit_torus();
    CHECK_THROWS_AS(torus_count_action(t, 5000.0), resource_error);
    CHECK_THROWS_AS(torus_heat_trace(t, 1e-9), resource_error);
    CHECK_THROWS_AS(torus_eigenvalues(t, 5000.0), resource_error);
}

TEST_CASE("count edge cases") {
    const TorusSpec t = unit_torus();
    // radius below the first nonzero shell: only the zero modes
    CHECK(torus_count_action(t, 0.5) == 8);
    CHECK_THROWS_AS(torus_count_action(t, 0.0), input_error);
    CHECK_THROWS_AS(torus_count_action(t, -3.0), input_error);
    CHECK_THROWS_AS(torus_heat_trace(t, 0.0), input_error);
}

TEST_CASE("torus json round trip") {
    TorusSpec t;
    t.dims = Dims{1, 2};
    t.periods = {0.5, 1.0, 2.0, 0.25};
    const TorusSpec back = torus_from_json(torus_to_json(t));
    CHECK(back.dims == t.dims);
    CHECK(back.periods == t.periods);

    // defaults when keys are absent
    const TorusSpec def = torus_from_json(json::object());
    CHECK(def.dims == Dims{1, 2});
    CHECK(def.periods == (std::array<double, 4>{1.0, 1.0, 1.0, 1.0}));

    json bad;
    bad["periods"] = {1.0, 2.0}; // wrong length
    CHECK_THROWS_AS(torus_from_json(bad), input_error);
}
