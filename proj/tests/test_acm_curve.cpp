#include <doctest.h>

#include "support.hpp"
#include "twistor/acm_curve.hpp"
#include "twistor/twistor_metric.hpp"

using namespace twistor;
using namespace testing_support;

namespace {

const AcmCurve& sample_curve(int r) {
    static const AcmCurve curves[] = {random_chart_curve(1, 101), random_chart_curve(2, 102),
                                      random_chart_curve(3, 103)};
    return curves[r - 1];
}

bool same_span(const ExactMatrix& a, const ExactMatrix& b) {
    const std::size_t ra = rank(a);
    return ra == rank(b) && rank(vstack(a, b)) == ra;
}

}  // namespace

TEST_CASE("degree and genus") {
    const std::pair<int, int> expected[] = {{1, 0}, {3, 0}, {6, 3}, {10, 11}, {15, 26}};
    for (int r = 1; r <= 5; ++r) {
        CHECK(invariants(r).d == expected[r - 1].first);
        CHECK(invariants(r).g == expected[r - 1].second);
    }
}

TEST_CASE("generated curves certify and their Hilbert polynomial is d k + 1 - g") {
    for (int r = 1; r <= 3; ++r) {
        const AcmCurve& c = sample_curve(r);
        CHECK(c.certified());
        CHECK(c.sigma_invariant);
        CHECK(c.minors.size() == static_cast<std::size_t>(r + 1));
        const CertificationReport rep = certify_resolution(c);
        CHECK(rep.passed);
        REQUIRE(rep.rows.size() == static_cast<std::size_t>(2 * r + 3));
        for (const auto& row : rep.rows) {
            CHECK(row.actual == row.predicted);
            if (row.k >= r) CHECK(monomial_count(4, row.k) - row.actual == std::size_t(c.d * row.k + 1 - c.g));
        }
    }
}

TEST_CASE("predicted ideal dimensions for the twisted cubic") {
    const std::size_t expected[] = {0, 0, 3, 10, 22, 40, 65};
    for (int k = 0; k <= 6; ++k) CHECK(predicted_ideal_dimension(2, k) == expected[k]);
}

TEST_CASE("a matrix whose pencil part is degenerate meets the base line") {
    const ExactMatrix s = CanonicalPair::of(2).S;
    const LinearMatrix m(s, s, CanonicalPair::of(2).T, ExactMatrix{{0, 1}, {0, 0}, {1, 0}});
    const AcmCurve c = make_curve(m);
    CHECK_FALSE(c.base_avoiding);
    CHECK_FALSE(c.certified());
    CHECK_THROWS_AS(restrict_to_fiber(c, 0), std::invalid_argument);
}

TEST_CASE("minors with a common factor fail certification") {
    // [[x3, 0], [0, x3], [x1, x2]]: every minor is divisible by x3
    const LinearMatrix m(ExactMatrix{{0, 0}, {0, 0}, {1, 0}}, ExactMatrix{{0, 0}, {0, 0}, {0, 1}},
                         ExactMatrix{{1, 0}, {0, 1}, {0, 0}}, ExactMatrix::zero(3, 2));
    const AcmCurve c = make_curve(m);
    const CertificationReport rep = certify_resolution(c);
    CHECK_FALSE(rep.passed);
    REQUIRE(rep.first_mismatch.has_value());
    CHECK(*rep.first_mismatch == 3);
    CHECK_FALSE(c.certified());
}

TEST_CASE("the ideal is gauge invariant") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 50; ++k) {
        const int r = 1 + k % 2;
        const AcmCurve c = make_curve(make_sigma_invariant_pencil(r, 500 + k));
        const LinearMatrix moved = c.matrix.transformed(random_invertible(rng, r + 1), random_invertible(rng, r));
        const AcmCurve d = make_curve(moved);
        CHECK(d.base_avoiding == c.base_avoiding);
        CHECK(d.exact == c.exact);
        for (int deg = r; deg <= r + 1; ++deg) CHECK(same_span(ideal_piece(c.minors, deg), ideal_piece(d.minors, deg)));
    }
}

TEST_CASE("fibers have length d and the open-stratum Hilbert function") {
    std::mt19937_64 rng(67);
    for (int r = 1; r <= 3; ++r) {
        const AcmCurve& c = sample_curve(r);
        for (int k = 0; k < 4; ++k) {
            const FiberScheme f = restrict_to_fiber(c, random_gaussian(rng, 4));
            CHECK(f.length() == static_cast<std::size_t>(c.d));
            const auto& h = f.hilbert_function();
            for (std::size_t j = 0; j < h.size(); ++j) CHECK(h[j] == expected_fiber_hilbert(r, static_cast<int>(j)));
            CHECK(stratum_check(f));
        }
        const FiberScheme at_infinity = restrict_to_fiber(c, 0, 1);
        CHECK(at_infinity.length() == static_cast<std::size_t>(c.d));
    }
    CHECK(expected_fiber_hilbert(3, 0) == 1);
    CHECK(expected_fiber_hilbert(3, 2) == 6);
    CHECK(expected_fiber_hilbert(3, 7) == 6);
}

TEST_CASE("three collinear points are outside the open stratum") {
    const HomogPoly u = HomogPoly::variable(3, 0), v = HomogPoly::variable(3, 1), w = HomogPoly::variable(3, 2);
    const FiberScheme f({v, u * (u - w) * (u - GaussianRational(2) * w)}, 2);
    CHECK(f.length() == 3);
    CHECK(f.hilbert_function()[1] == 2);
    CHECK_FALSE(stratum_check(f));
}

TEST_CASE("sigma maps the fiber over zeta to the fiber over the antipode") {
    std::mt19937_64 rng(71);
    for (int k = 0; k < 50; ++k) {
        const int r = 1 + k % 2;
        const AcmCurve c = random_chart_curve(r, 900 + k);
        REQUIRE(c.sigma_invariant);
        GaussianRational z3 = random_gaussian(rng, 3), z4 = random_gaussian(rng, 3);
        if (z3.is_zero() && z4.is_zero()) z3 = 1;
        const FiberScheme here = restrict_to_fiber(c, z3, z4);
        const FiberScheme there = restrict_to_fiber(c, -z4.conj(), z3.conj());
        std::vector<HomogPoly> image;
        for (const auto& g : here.generators()) image.push_back(sigma_fiber_form(g));
        CHECK(same_span(ideal_piece(image, r), ideal_piece(there.generators(), r)));
    }
}
