#include <doctest.h>

#include "support.hpp"
#include "twistor/reality.hpp"

using namespace twistor;
using namespace testing_support;

namespace {

std::array<GaussianRational, 4> random_point(std::mt19937_64& rng) {
    std::array<GaussianRational, 4> x;
    for (auto& xi : x) xi = random_gaussian(rng, 4);
    if (x[0].is_zero()) x[0] = 1;
    return x;
}

}  // namespace

TEST_CASE("sigma on points is a fixed-point-free involution up to sign") {
    std::mt19937_64 rng(51);
    for (int k = 0; k < 30; ++k) {
        const auto x = random_point(rng);
        const auto y = sigma_point(sigma_point(x));
        for (int i = 0; i < 4; ++i) CHECK(y[i] == -x[i]);
        // sigma x is never proportional to x
        const auto s = sigma_point(x);
        const bool proportional = (x[0] * s[1] - x[1] * s[0]).is_zero() && (x[2] * s[3] - x[3] * s[2]).is_zero();
        CHECK_FALSE(proportional);
    }
    CHECK_THROWS_AS(sigma_point({0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("sigma on forms matches conj(f(sigma x))") {
    std::mt19937_64 rng(53);
    for (int k = 0; k < 30; ++k) {
        const HomogPoly f = random_form(rng, 4, 1 + k % 3);
        const auto x = random_point(rng);
        const auto sx = sigma_point(x);
        const std::vector<GaussianRational> at_x(x.begin(), x.end()), at_sx(sx.begin(), sx.end());
        CHECK(sigma_form(f).evaluate(at_x) == f.evaluate(at_sx).conj());
        const HomogPoly twice = sigma_form(sigma_form(f));
        CHECK(twice == (f.degree() % 2 ? GaussianRational(-1) : GaussianRational(1)) * f);
    }
}

TEST_CASE("sigma on linear matrices squares to minus one") {
    std::mt19937_64 rng(55);
    const LinearMatrix m(random_matrix(rng, 3, 2), random_matrix(rng, 3, 2), random_matrix(rng, 3, 2),
                         random_matrix(rng, 3, 2));
    const LinearMatrix twice = sigma_linear_matrix(sigma_linear_matrix(m));
    for (int k = 0; k < 4; ++k) CHECK(twice.A[k] == GaussianRational(-1) * m.A[k]);
}

TEST_CASE("canonical gauges") {
    SUBCASE("r = 1") {
        const SigmaGauge& g = canonical_sigma_gauge(1);
        CHECK(g.G == ExactMatrix{{0, 1}, {-1, 0}});
        CHECK(g.H == ExactMatrix{{-1}});
    }
    SUBCASE("r = 2") {
        const SigmaGauge& g = canonical_sigma_gauge(2);
        CHECK(g.G == ExactMatrix{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}});
        CHECK(g.H == ExactMatrix{{0, 1}, {-1, 0}});
    }
    SUBCASE("r = 3") {
        const SigmaGauge& g = canonical_sigma_gauge(3);
        CHECK(g.G == ExactMatrix{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}});
        CHECK(g.H == ExactMatrix{{0, 0, -1}, {0, 1, 0}, {-1, 0, 0}});
    }
    for (int r = 1; r <= 5; ++r) {
        const CanonicalPair c = CanonicalPair::of(r);
        const SigmaGauge& g = canonical_sigma_gauge(r);
        // sigma(S x1 + T x2) = (conj T) x1 - (conj S) x2
        CHECK(g.G * c.S * g.H == c.T.conj());
        CHECK(g.G * c.T * g.H == GaussianRational(-1) * c.S.conj());
    }
}

TEST_CASE("generated pencils are sigma-invariant in their own gauge") {
    for (int r = 1; r <= 4; ++r)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const LinearMatrix m = make_sigma_invariant_pencil(r, seed);
            CHECK(is_injective_pencil(m.base_pencil()));
            const auto gauge = find_sigma_gauge(m);
            REQUIRE(gauge.has_value());
            const LinearMatrix s = sigma_linear_matrix(m);
            for (int k = 0; k < 4; ++k) CHECK(gauge->G * m.A[k] * gauge->H == s.A[k]);
            CHECK(make_sigma_invariant_pencil(r, seed) == m);
        }
}

TEST_CASE("a generic linear matrix has no sigma gauge") {
    std::mt19937_64 rng(57);
    const LinearMatrix m(random_matrix(rng, 3, 2), random_matrix(rng, 3, 2), random_matrix(rng, 3, 2),
                         random_matrix(rng, 3, 2));
    CHECK_FALSE(find_sigma_gauge(m).has_value());
}

TEST_CASE("sigma pair recovers (A3, A4) from A3 + t A4") {
    std::mt19937_64 rng(59);
    for (int k = 0; k < 30; ++k) {
        const int r = 1 + k % 3;
        const SigmaGauge& g = canonical_sigma_gauge(r);
        const ExactMatrix a3 = random_matrix(rng, r + 1, r);
        const ExactMatrix a4 = sigma_partner_A4(g, a3);
        const GaussianRational t = random_gaussian(rng, 3);
        const auto [b3, b4] = sigma_pair_A34(a3 + t * a4, t);
        CHECK(b3 == a3);
        CHECK(b4 == a4);
        // the partner rule is an involution up to the sign of conj(G) G
        CHECK(sigma_partner_A4(g, a4) == GaussianRational(-1) * a3);
    }
}
