#include <doctest.h>

#include "twistor/cohomology.hpp"
#include "twistor/twistor_metric.hpp"

using namespace twistor;

namespace {

const AcmCurve& curve(int r) {
    static const AcmCurve curves[] = {random_chart_curve(1, 201), random_chart_curve(2, 202),
                                      random_chart_curve(3, 203)};
    return curves[r - 1];
}

long alternating(const CohomologyDims& h) {
    return static_cast<long>(h[0]) - static_cast<long>(h[1]) + static_cast<long>(h[2]) - static_cast<long>(h[3]);
}

}  // namespace

TEST_CASE("line bundles on P3") {
    CHECK(line_bundle_cohomology_P3(0) == CohomologyDims{1, 0, 0, 0});
    CHECK(line_bundle_cohomology_P3(2) == CohomologyDims{10, 0, 0, 0});
    CHECK(line_bundle_cohomology_P3(-2) == CohomologyDims{0, 0, 0, 0});
    CHECK(line_bundle_cohomology_P3(-4) == CohomologyDims{0, 0, 0, 1});
    CHECK(line_bundle_cohomology_P3(-6) == CohomologyDims{0, 0, 0, 10});
}

TEST_CASE("ideal cohomology is consistent with the Euler characteristic") {
    for (int r = 1; r <= 3; ++r) {
        const AcmCurve& c = curve(r);
        for (int k = -5; k <= r + 2; ++k) {
            const CohomologyDims h = ideal_cohomology(c, k);
            CHECK(h[1] == 0);
            CHECK(alternating(h) == euler_characteristic_ideal(c, k));
            // H^3(I_C(k)) = H^3(O(k)) since the curve has no H^2
            CHECK(h[3] == line_bundle_cohomology_P3(k)[3]);
        }
    }
}

TEST_CASE("frozen rows for the twisted cubic") {
    const AcmCurve& c = curve(2);
    CHECK(ideal_cohomology(c, -2) == CohomologyDims{0, 0, 5, 0});
    CHECK(ideal_cohomology(c, -1) == CohomologyDims{0, 0, 2, 0});
    CHECK(ideal_cohomology(c, 2) == CohomologyDims{3, 0, 0, 0});
    CHECK(ideal_cohomology(c, 3) == CohomologyDims{10, 0, 0, 0});
}

TEST_CASE("I_C(r-1) and I_C(r-2) are acyclic") {
    for (int r = 1; r <= 3; ++r) {
        CHECK(ellia_stability_check(curve(r)));
        CHECK(ideal_cohomology(curve(r), r - 1) == CohomologyDims{0, 0, 0, 0});
        CHECK(ideal_cohomology(curve(r), r - 2) == CohomologyDims{0, 0, 0, 0});
    }
}

TEST_CASE("normal sheaf sections") {
    for (int r = 1; r <= 3; ++r) {
        CHECK(normal_sections(curve(r), 0) == static_cast<std::size_t>(2 * r * (r + 1)));
        CHECK(normal_sections(curve(r), -1) == static_cast<std::size_t>(r * (r + 1)));
    }
    CHECK(normal_sections(curve(1), -2) == 0);
}

TEST_CASE("cohomology table rows") {
    const CohomologyTable t = cohomology_table(curve(2), -1, 3);
    REQUIRE(t.rows.size() == 5);
    const std::size_t h0_OC[] = {0, 1, 4, 7, 10};
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(t.rows[i].k == static_cast<int>(i) - 1);
        CHECK(t.rows[i].h0_OC == h0_OC[i]);
    }
}

TEST_CASE("uncertified curves are rejected") {
    const ExactMatrix s = CanonicalPair::of(1).S;
    const AcmCurve c = make_curve(LinearMatrix(s, s, CanonicalPair::of(1).T, ExactMatrix::zero(2, 1)));
    REQUIRE_FALSE(c.certified());
    CHECK_THROWS_AS(ideal_cohomology(c, 0), std::invalid_argument);
    CHECK_THROWS_AS(normal_sections(c, 0), std::invalid_argument);
}
