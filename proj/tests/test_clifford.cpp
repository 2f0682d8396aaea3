#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "subdirac/clifford.hpp"
#include "subdirac/errors.hpp"
#include "subdirac/rng.hpp"

using namespace subdirac;

namespace {

const std::vector<Dims> kDimsSet = {{1, 2}, {1, 4}, {2, 2}};

std::vector<Generator> generator_list(const Dims& d) {
    std::vector<Generator> gens;
    for (int i = 1; i <= d.leaf_rank(); ++i) gens.push_back(Generator::leaf_c(i));
    for (int s = 1; s <= d.q; ++s) gens.push_back(Generator::normal_c(s));
    for (int s = 1; s <= d.q; ++s) gens.push_back(Generator::normal_hat(s));
    return gens;
}

Word random_word(const Dims& d, std::mt19937_64& rng, int max_len) {
    const auto gens = generator_list(d);
    Word w;
    const int len = uniform_int(rng, 0, max_len);
    for (int k = 0; k < len; ++k)
        w.push_back(gens[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(gens.size()) - 1))]);
    return w;
}

// built by division so the stored rational is always canonical
mpq_class random_rational(std::mt19937_64& rng) {
    return mpq_class(uniform_int(rng, -6, 6)) / (1 + uniform_int(rng, 0, 4));
}

AlgebraElement random_element(const Dims& d, std::mt19937_64& rng) {
    AlgebraElement e(d);
    const int terms = uniform_int(rng, 1, 4);
    for (int k = 0; k < terms; ++k) {
        const GaussianRational c(random_rational(rng), random_rational(rng));
        e += AlgebraElement::from_word(d, random_word(d, rng, 6), c);
    }
    return e;
}

} // namespace

TEST_CASE("generator squares and anticommutators") {
    for (const Dims& d : kDimsSet) {
        CAPTURE(d.str());
        const auto gens = generator_list(d);
        const AlgebraElement id = AlgebraElement::identity(d);
        for (std::size_t a = 0; a < gens.size(); ++a) {
            const auto ga = AlgebraElement::generator(d, gens[a]);
            CHECK(mul(ga, ga) == id * GaussianRational(gens[a].square_sign()));
            for (std::size_t b = a + 1; b < gens.size(); ++b) {
                const auto gb = AlgebraElement::generator(d, gens[b]);
                CHECK((mul(ga, gb) + mul(gb, ga)).is_zero());
            }
        }
    }
}

TEST_CASE("canonicalize worked examples") {
    const Dims d{1, 2};

    SUBCASE("one transposition costs a sign") {
        const auto [w, c] = canonicalize(d, {Generator::normal_c(2), Generator::normal_c(1)});
        REQUIRE(w.size() == 2);
        CHECK(w[0] == Generator::normal_c(1));
        CHECK(w[1] == Generator::normal_c(2));
        CHECK(c == GaussianRational(-1));
    }

    SUBCASE("anticommute then contract a minus-square") {
        const auto [w, c] = canonicalize(
            d, {Generator::leaf_c(1), Generator::normal_hat(1), Generator::leaf_c(1)});
        REQUIRE(w.size() == 1);
        CHECK(w[0] == Generator::normal_hat(1));
        CHECK(c == GaussianRational(1));
    }

    SUBCASE("interleaved hat pair contracts to minus identity") {
        const auto [w, c] = canonicalize(d, {Generator::normal_hat(1), Generator::normal_hat(2),
                                             Generator::normal_hat(1), Generator::normal_hat(2)});
        CHECK(w.empty());
        CHECK(c == GaussianRational(-1));
    }
}

TEST_CASE("canonicalize is idempotent on random words") {
    for (const Dims& d : kDimsSet) {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 400; ++trial) {
            const Word w = random_word(d, rng, 10);
            const auto [cw, c] = canonicalize(d, w);
            const auto [cw2, c2] = canonicalize(d, cw);
            CHECK(cw2 == cw);
            CHECK(c2 == GaussianRational(1));
        }
    }
}

TEST_CASE("mask round trip on canonical words") {
    const Dims d{2, 2};
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [cw, c] = canonicalize(d, random_word(d, rng, 8));
        const WordMask mask = word_to_mask(d, cw);
        CHECK(mask_to_word(d, mask) == cw);
    }
}

TEST_CASE("product is associative and bilinear") {
    for (const Dims& d : kDimsSet) {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 60; ++trial) {
            const auto a = random_element(d, rng);
            const auto b = random_element(d, rng);
            const auto c = random_element(d, rng);
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
            CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
        }
    }
}

TEST_CASE("trace normalization and cyclicity") {
    for (const Dims& d : kDimsSet) {
        CHECK(trace(AlgebraElement::identity(d)) == GaussianRational(d.fibre_dim()));
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 60; ++trial) {
            const auto a = random_element(d, rng);
            const auto b = random_element(d, rng);
            CHECK(trace(mul(a, b)) == trace(mul(b, a)));
        }
    }
}

TEST_CASE("trace vanishes on every odd-length word") {
    for (const Dims& d : kDimsSet) {
        std::mt19937_64 rng(19);
        for (int trial = 0; trial < 500; ++trial) {
            Word w = random_word(d, rng, 5);
            if (w.size() % 2 == 0) w.push_back(generator_list(d)[0]);
            CHECK(trace(AlgebraElement::from_word(d, w)).is_zero());
        }
    }
}

TEST_CASE("trace worked examples") {
    const Dims d{1, 2};
    CHECK(trace(AlgebraElement::identity(d)) == GaussianRational(8));
    CHECK(trace(AlgebraElement::generator(d, Generator::leaf_c(1))).is_zero());

    // c(h1)c(h2)hc(h1)hc(h2): the listed mixed quartet with r != l
    const auto mixed = AlgebraElement::from_word(
        d, {Generator::normal_c(1), Generator::normal_c(2), Generator::normal_hat(1),
            Generator::normal_hat(2)});
    CHECK(trace(mixed).is_zero());

    // hc(h1)hc(h2)hc(h2)hc(h1) = +Id, so the trace is the full fibre dimension
    const auto hats = AlgebraElement::from_word(
        d, {Generator::normal_hat(1), Generator::normal_hat(2), Generator::normal_hat(2),
            Generator::normal_hat(1)});
    CHECK(trace(hats) == GaussianRational(8));
}

TEST_CASE("hat quartet trace closed form") {
    for (const Dims& d : kDimsSet) {
        const long fib = d.fibre_dim();
        for (int s = 1; s <= d.q; ++s)
            for (int t = 1; t <= d.q; ++t) {
                if (s == t) continue;
                for (int s2 = 1; s2 <= d.q; ++s2)
                    for (int t2 = 1; t2 <= d.q; ++t2) {
                        if (s2 == t2) continue;
                        const auto w = AlgebraElement::from_word(
                            d, {Generator::normal_hat(s), Generator::normal_hat(t),
                                Generator::normal_hat(s2), Generator::normal_hat(t2)});
                        const long expected =
                            fib * ((t == s2 && s == t2 ? 1 : 0) - (t == t2 && s == s2 ? 1 : 0));
                        CHECK(trace(w) == GaussianRational(expected));
                    }
            }
    }
}

TEST_CASE("normal volume element") {
    const Dims d{1, 2};
    const AlgebraElement tau = volume_element(d);

    // (-i)^(q(q+1)/2) = (-i)^3 = i for q = 2
    AlgebraElement expected = AlgebraElement::from_word(
        d, {Generator::normal_c(1), Generator::normal_c(2)}, GaussianRational::unit_i());
    CHECK(tau == expected);
    CHECK(mul(tau, tau) == AlgebraElement::identity(d));

    for (const Dims& dd : kDimsSet)
        CHECK(mul(volume_element(dd), volume_element(dd)) == AlgebraElement::identity(dd));
}

TEST_CASE("ambient volume involution") {
    for (const Dims& d : kDimsSet) {
        const AlgebraElement gamma = volume_involution(d);
        const AlgebraElement id = AlgebraElement::identity(d);
        CHECK(mul(gamma, gamma) == id);
        for (int a = 1; a <= d.m(); ++a) {
            const auto ca = AlgebraElement::generator(d, Generator::ambient_c(d, a));
            CHECK((mul(gamma, ca) + mul(ca, gamma)).is_zero());
        }
    }
    CHECK(gamma5(Dims{1, 2}) == volume_involution(Dims{1, 2}));
    CHECK(mul(gamma5(Dims{1, 2}), gamma5(Dims{1, 2})) == AlgebraElement::identity(Dims{1, 2}));
    CHECK_THROWS_AS(gamma5(Dims{1, 4}), unsupported_dimension_error);
}

TEST_CASE("dimension mismatches are rejected") {
    const AlgebraElement a = AlgebraElement::identity(Dims{1, 2});
    const AlgebraElement b = AlgebraElement::identity(Dims{2, 2});
    CHECK_THROWS_AS(mul(a, b), dimension_error);
}

TEST_CASE("invalid dims are rejected") {
    CHECK_THROWS_AS(Dims(0, 2), input_error);
    CHECK_THROWS_AS(Dims(1, 3), input_error);
    CHECK_THROWS_AS(Dims(1, 0), input_error);
}
