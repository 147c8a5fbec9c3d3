#include <doctest.h>

#include "support.hpp"
#include "twistor/rational_curve.hpp"

using namespace twistor;
using namespace testing_support;

namespace {

HomogPoly power(const HomogPoly& p, int e) {
    HomogPoly out = HomogPoly::constant(p.num_vars(), 1);
    for (int k = 0; k < e; ++k) out = out * p;
    return out;
}

// f(a s + b t, c s + d t)
HomogPoly substitute(const HomogPoly& f, const ExactMatrix& m) {
    const HomogPoly s = HomogPoly::variable(2, 0), t = HomogPoly::variable(2, 1);
    const HomogPoly l1 = m(0, 0) * s + m(0, 1) * t, l2 = m(1, 0) * s + m(1, 1) * t;
    HomogPoly out(2, f.degree());
    for (int k = 0; k <= f.degree(); ++k) out += f.coeff(k) * (power(l1, f.degree() - k) * power(l2, k));
    return out;
}

RationalCurveMap reparametrize(const RationalCurveMap& f, const ExactMatrix& source, const ExactMatrix& target) {
    std::array<HomogPoly, 4> g;
    for (int i = 0; i < 4; ++i) {
        g[i] = HomogPoly(2, f.d);
        for (int j = 0; j < 4; ++j) g[i] += target(i, j) * substitute(f.f[j], source);
    }
    return {f.d, g};
}

}  // namespace

TEST_CASE("preset curves") {
    CHECK(normal_splitting_type(line_map()) == SplittingType{1, 1});
    CHECK(normal_splitting_type(conic_map()) == SplittingType{2, 4});
    CHECK_FALSE(stability_check(conic_map()));
    CHECK(normal_splitting_type(twisted_cubic_map()) == SplittingType{5, 5});
    CHECK(stability_check(twisted_cubic_map()));
}

TEST_CASE("every valid conic is unstable") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const RationalCurveMap f = random_rational_curve(2, seed);
        CHECK(normal_splitting_type(f) == SplittingType{2, 4});
        CHECK_FALSE(stability_check(f));
    }
}

TEST_CASE("section counts follow the split model") {
    for (const RationalCurveMap& f : {line_map(), conic_map(), twisted_cubic_map(), random_rational_curve(4, 3)}) {
        const SplittingType s = normal_splitting_type(f);
        CHECK(s.a + s.b == 4 * f.d - 2);
        for (int m = 0; m <= 3; ++m)
            CHECK(normal_sections_primal(f, m) == static_cast<std::size_t>(s.a + s.b + 2 * m + 2));
        for (int m = 0; m <= s.b + 2; ++m)
            CHECK(dual_normal_sections(f, m) ==
                  static_cast<std::size_t>(std::max(m - s.a + 1, 0) + std::max(m - s.b + 1, 0)));
    }
}

TEST_CASE("splitting type is invariant under reparametrization and projective change") {
    std::mt19937_64 rng(73);
    for (int k = 0; k < 20; ++k) {
        const int d = 2 + k % 3;
        const RationalCurveMap f = random_rational_curve(d, 700 + k);
        const RationalCurveMap g = reparametrize(f, random_invertible(rng, 2), random_invertible(rng, 4));
        REQUIRE(validate_map(g).valid());
        CHECK(normal_splitting_type(g) == normal_splitting_type(f));
    }
}

TEST_CASE("random curves of degree 3 to 5") {
    for (int d = 3; d <= 5; ++d) {
        int balanced = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const SplittingType s = normal_splitting_type(random_rational_curve(d, seed));
            CHECK(s.a + s.b == 4 * d - 2);
            CHECK(s.a <= s.b);
            balanced += s.a == s.b;
        }
        CHECK(balanced >= 8);
    }
}

TEST_CASE("invalid maps are rejected with a witness") {
    const HomogPoly s = HomogPoly::variable(2, 0), t = HomogPoly::variable(2, 1);
    // every component divisible by s: base point [0:1]
    const RationalCurveMap based(2, {s * s, s * t, HomogPoly(2, 2), HomogPoly(2, 2)});
    const MapValidation v = validate_map(based);
    CHECK_FALSE(v.base_point_free);
    CHECK(v.witness.find("[0:1]") != std::string::npos);
    CHECK_THROWS_AS(normal_splitting_type(based), std::invalid_argument);

    // cuspidal cubic (s^3, s t^2, t^3, 0) is ramified at [1:0]
    const RationalCurveMap cusp(3, {power(s, 3), s * t * t, power(t, 3), HomogPoly(2, 3)});
    const MapValidation w = validate_map(cusp);
    CHECK(w.base_point_free);
    CHECK_FALSE(w.immersion);
    CHECK(w.witness.find("[1:0]") != std::string::npos);

    CHECK_THROWS_AS(RationalCurveMap(2, {s, t, s, t}), std::invalid_argument);
}
