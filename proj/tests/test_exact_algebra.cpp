#include <doctest.h>

#include "support.hpp"
#include "twistor/univariate.hpp"

using namespace twistor;
using namespace testing_support;

TEST_CASE("literal grammar accepts the documented forms") {
    CHECK(GaussianRational::parse("3") == GaussianRational(3));
    CHECK(GaussianRational::parse("-1/2") == GaussianRational(mpq_class(-1, 2)));
    CHECK(GaussianRational::parse("2i") == GaussianRational(0, 2));
    CHECK(GaussianRational::parse("1/2-3/4i") == GaussianRational(mpq_class(1, 2), mpq_class(-3, 4)));
    CHECK(GaussianRational::parse("−1") == GaussianRational(-1));
    CHECK(GaussianRational::parse("4/6") == GaussianRational(mpq_class(2, 3)));
    CHECK(GaussianRational::parse(" 1 + 2i ") == GaussianRational(1, 2));
}

TEST_CASE("literal grammar rejects malformed input") {
    for (const char* bad : {"", "i", "1+i", "1/0", "2/-3", "abc", "1/2/3", "3i+1", "1.5"})
        CHECK_THROWS_AS(GaussianRational::parse(bad), std::invalid_argument);
}

TEST_CASE("to_string and parse round-trip") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> n(-40, 40), q(1, 9);
    for (int k = 0; k < 200; ++k) {
        const GaussianRational z(mpq_class(n(rng), q(rng)), mpq_class(n(rng), q(rng)));
        CHECK(GaussianRational::parse(z.to_string()) == z);
    }
}

TEST_CASE("field arithmetic") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const GaussianRational a = random_gaussian(rng, 7), b = random_gaussian(rng, 7);
        if (b.is_zero()) continue;
        CHECK((a / b) * b == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((b * b.conj()).real() == b.norm2());
    }
}

TEST_CASE("rank agrees with the minor-expansion oracle") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 40; ++k) {
        const std::size_t inner = 1 + k % 4;
        const ExactMatrix m = random_matrix(rng, 4, inner, 2) * random_matrix(rng, inner, 5, 2);
        CHECK(rank(m) == minor_rank(m));
        CHECK(rank(m.transpose()) == rank(m));
    }
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 30; ++k) {
        const std::size_t n = 1 + k % 5;
        ExactMatrix m = random_matrix(rng, n, n, 4);
        if (k % 3 == 0 && n > 1)
            for (std::size_t c = 0; c < n; ++c) m(n - 1, c) = m(0, c) * GaussianRational(2, -1);
        CHECK(determinant(m) == leibniz_det(m));
    }
}

TEST_CASE("inverse, kernel and reduced echelon form") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 20; ++k) {
        const ExactMatrix a = random_invertible(rng, 4);
        CHECK(a * inverse(a) == ExactMatrix::identity(4));

        const ExactMatrix m = random_matrix(rng, 3, 2, 2) * random_matrix(rng, 2, 5, 2);
        const ExactMatrix ker = kernel_basis(m);
        CHECK(ker.cols() == 5 - rank(m));
        CHECK((m * ker).is_zero());

        const RowEchelon e = row_echelon(m);
        CHECK(e.rank() == rank(m));
        for (std::size_t i = 0; i < e.rank(); ++i)
            for (std::size_t row = 0; row < e.reduced.rows(); ++row)
                CHECK(e.reduced(row, e.pivots[i]) == GaussianRational(row == i ? 1 : 0));
    }
    ExactMatrix singular{{1, 2}, {2, 4}};
    CHECK_THROWS_AS(inverse(singular), std::domain_error);
}

TEST_CASE("monomial bookkeeping") {
    CHECK(monomial_count(4, 3) == 20);
    CHECK(monomial_count(3, -1) == 0);
    const auto basis = monomial_basis(3, 2);
    REQUIRE(basis.size() == 6);
    CHECK(basis.front() == Exponent{2, 0, 0});
    CHECK(basis.back() == Exponent{0, 0, 2});
    for (std::size_t k = 0; k < basis.size(); ++k) CHECK(monomial_index(basis[k]) == k);
}

TEST_CASE("polynomial evaluation is a ring homomorphism") {
    std::mt19937_64 rng(29);
    for (int k = 0; k < 20; ++k) {
        const HomogPoly f = random_form(rng, 4, 2), g = random_form(rng, 4, 2), h = random_form(rng, 4, 1);
        std::vector<GaussianRational> x(4);
        for (auto& xi : x) xi = random_gaussian(rng, 5);
        CHECK(((f + g) * h).evaluate(x) == (f.evaluate(x) + g.evaluate(x)) * h.evaluate(x));
    }
}

TEST_CASE("graded_matrix is functorial on products") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 50; ++k) {
        const PolyMatrix a = random_poly_matrix(rng, 2, 3, 3, 1);
        const PolyMatrix b = random_poly_matrix(rng, 3, 2, 3, 1 + k % 2);
        const int s = k % 3;
        const ExactMatrix lhs = graded_matrix(a * b, s, 3).matrix;
        const ExactMatrix rhs = graded_matrix(a, s + 1 + k % 2, 3).matrix * graded_matrix(b, s, 3).matrix;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("graded_matrix rejects mixed degrees") {
    PolyMatrix m(1, 2, 2, 1);
    m(0, 0) = HomogPoly::variable(2, 0);
    m(0, 1) = HomogPoly::variable(2, 0) * HomogPoly::variable(2, 1);
    CHECK_THROWS_AS(graded_matrix(m, 0, 2), std::invalid_argument);
}

TEST_CASE("ideal pieces and quotient normal forms") {
    const HomogPoly x1 = HomogPoly::variable(3, 0), x2 = HomogPoly::variable(3, 1);
    CHECK(ideal_piece_dimension({x1}, 2) == 3);
    CHECK(ideal_piece_dimension({x1, x2}, 2) == 5);
    CHECK(ideal_piece_dimension({}, 2) == 0);

    const QuotientPiece q({x1 * x1, x1 * x2}, 3, 2);
    CHECK(q.dimension() == 4);
    for (const auto& c : q.normal_form(x1 * x2 - GaussianRational(3) * x1 * x1)) CHECK(c.is_zero());
    const auto nf = q.normal_form(x2 * x2);
    CHECK(std::count_if(nf.begin(), nf.end(), [](const GaussianRational& c) { return !c.is_zero(); }) == 1);
}

TEST_CASE("univariate gcd and common zeros of binary forms") {
    const UniPoly a({2, -3, 1});  // (x-1)(x-2)
    const UniPoly b({-3, 2, 1});  // (x-1)(x+3)
    CHECK(gcd(a, b) == UniPoly({-1, 1}));

    const HomogPoly s = HomogPoly::variable(2, 0), t = HomogPoly::variable(2, 1);
    const BinaryFormGcd at_zero = binary_form_gcd({s * t, t * t});
    CHECK(at_zero.finite == UniPoly({0, 1}));
    CHECK_FALSE(at_zero.common_zero_at_infinity);

    const BinaryFormGcd at_infinity = binary_form_gcd({s * t, s * s});
    CHECK(at_infinity.common_zero_at_infinity);
    CHECK(binary_form_gcd({s * s, t * t}).is_constant());
}
