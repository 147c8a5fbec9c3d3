#include <doctest.h>

#include "support.hpp"
#include "twistor/pencil.hpp"

using namespace twistor;
using namespace testing_support;

namespace {

Pencil random_injective_pencil(std::mt19937_64& rng, int r) {
    for (;;) {
        Pencil p(random_matrix(rng, r + 1, r, 2), random_matrix(rng, r + 1, r, 2));
        if (is_injective_pencil(p)) return p;
    }
}

bool proportional(const ExactMatrix& a, const ExactMatrix& b) {
    GaussianRational ratio;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero() != b(i, k).is_zero()) return false;
            if (a(i, k).is_zero()) continue;
            if (ratio.is_zero()) ratio = a(i, k) / b(i, k);
            else if (a(i, k) != ratio * b(i, k)) return false;
        }
    return !ratio.is_zero();
}

}  // namespace

TEST_CASE("canonical pair shapes") {
    const CanonicalPair c = CanonicalPair::of(2);
    CHECK(c.S == ExactMatrix{{1, 0}, {0, 1}, {0, 0}});
    CHECK(c.T == ExactMatrix{{0, 0}, {1, 0}, {0, 1}});
    CHECK_THROWS_AS(CanonicalPair::of(0), std::invalid_argument);
}

TEST_CASE("the canonical pencil reduces with identity transforms") {
    for (int r = 1; r <= 5; ++r) {
        const CanonicalPair c = CanonicalPair::of(r);
        const KroneckerReduction red = kronecker_reduce({c.S, c.T});
        CHECK(red.P == ExactMatrix::identity(r + 1));
        CHECK(red.Q == ExactMatrix::identity(r));
    }
}

TEST_CASE("random injective pencils reduce exactly") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 30; ++k) {
        const int r = 1 + k % 5;
        const Pencil p = random_injective_pencil(rng, r);
        const KroneckerReduction red = kronecker_reduce(p);
        const CanonicalPair c = CanonicalPair::of(r);
        CHECK(red.P * p.A1 * red.Q == c.S);
        CHECK(red.P * p.A2 * red.Q == c.T);
    }
}

TEST_CASE("stabilizer of the canonical pencil is the centre") {
    for (int r = 1; r <= 6; ++r) CHECK(stabilizer_dimension(CanonicalPair::of(r)) == 1);
}

TEST_CASE("non-injective pencils are rejected with a witness") {
    const Pencil p(ExactMatrix{{1, 0}, {0, 0}, {0, 0}}, ExactMatrix{{0, 0}, {1, 0}, {0, 0}});
    CHECK_FALSE(is_injective_pencil(p));
    const auto w = rank_drop_witness(p);
    REQUIRE(w.has_value());
    CHECK_THROWS_AS(kronecker_reduce(p), NonInjectivePencil);

    // rank drops only at [1:-1]
    const Pencil q(ExactMatrix{{1}, {0}}, ExactMatrix{{1}, {0}});
    CHECK(rank_drop_witness(q).value() == "[1:-1]");
}

TEST_CASE("reduction is gauge invariant up to the centre") {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 50; ++k) {
        const int r = 1 + k % 4;
        const Pencil p = random_injective_pencil(rng, r);
        const ExactMatrix G = random_invertible(rng, r + 1), H = random_invertible(rng, r);
        const Pencil moved(G * p.A1 * H, G * p.A2 * H);
        const KroneckerReduction a = kronecker_reduce(p), b = kronecker_reduce(moved);
        CHECK(satisfies_reduction(moved, b));
        CHECK(proportional(b.P * G, a.P));
        CHECK(proportional(H * b.Q, a.Q));
    }
}
