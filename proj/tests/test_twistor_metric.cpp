#include <doctest.h>

#include "support.hpp"
#include "twistor/twistor_metric.hpp"

using namespace twistor;
using namespace testing_support;
using cd = std::complex<double>;

namespace {

const FlatChart& chart(int r) {
    static const FlatChart charts[] = {normalize_to_flat_chart(random_chart_curve(1, 301)),
                                       normalize_to_flat_chart(random_chart_curve(2, 302))};
    return charts[r - 1];
}

Eigen::MatrixXd to_double(const ExactMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) out(i, k) = m(i, k).real().get_d();
    return out;
}

const FiberPoint& nearest(const std::vector<FiberPoint>& pts, const FiberPoint& p) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (std::abs(pts[k][0] - p[0]) + std::abs(pts[k][1] - p[1]) <
            std::abs(pts[best][0] - p[0]) + std::abs(pts[best][1] - p[1]))
            best = k;
    return pts[best];
}

}  // namespace

TEST_CASE("flat chart normal form") {
    for (int r = 1; r <= 2; ++r) {
        const FlatChart& c = chart(r);
        CHECK(c.normalized);
        CHECK(c.matrix.A1() == CanonicalPair::of(r).S);
        CHECK(c.matrix.A2() == CanonicalPair::of(r).T);
        CHECK(c.matrix.A4() == sigma_partner_A4(canonical_sigma_gauge(r), c.matrix.A3()));
    }
}

TEST_CASE("quaternionic relations hold exactly") {
    for (int r = 1; r <= 3; ++r) {
        const ComplexStructures q = complex_structures(r);
        const std::size_t n = 2 * r * (r + 1);
        const ExactMatrix minus_one = GaussianRational(-1) * ExactMatrix::identity(n);
        CHECK(q.I * q.I == minus_one);
        CHECK(q.J * q.J == minus_one);
        CHECK(q.K * q.K == minus_one);
        CHECK(q.I * q.J == q.K);
    }
}

TEST_CASE("sections vanishing at zeta span the -i eigenspace of the structure at zeta") {
    // zeta = 0, 1, i correspond to I, J, K
    for (int r = 1; r <= 2; ++r) {
        const auto basis = real_tangent_basis(chart(r));
        const ComplexStructures q = complex_structures(r);
        const std::size_t n = basis.size();
        const std::pair<cd, const ExactMatrix*> cases[] = {{0, &q.I}, {1, &q.J}, {cd(0, 1), &q.K}};
        for (const auto& [zeta, structure] : cases) {
            Eigen::MatrixXcd L(r * (r + 1), n);
            for (std::size_t k = 0; k < n; ++k) {
                const Eigen::MatrixXcd v = basis[k].dA3.to_complex() + zeta * basis[k].dA4.to_complex();
                L.col(k) = Eigen::Map<const Eigen::VectorXcd>(v.data(), v.size());
            }
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(L);
            const Eigen::MatrixXcd ker = lu.kernel();
            CHECK(ker.cols() == static_cast<Eigen::Index>(n / 2));
            const Eigen::MatrixXcd Q = to_double(*structure).cast<cd>();
            CHECK((Q * ker + cd(0, 1) * ker).norm() < 1e-12 * ker.norm());
        }
    }
}

TEST_CASE("trace identities of the multiplication operators") {
    std::mt19937_64 rng(79);
    for (int k = 0; k < 50; ++k) {
        const int r = 1 + k % 2;
        const FlatChart c = normalize_to_flat_chart(random_chart_curve(r, 1200 + k));
        const GaussianRational t = random_gaussian(rng, 3);
        const MultiplicationOperators m = multiplication_operators(c, t);
        const auto pts = fiber_points(c, t);
        REQUIRE(pts.size() == static_cast<std::size_t>(r * (r + 1) / 2));
        cd su = 0, sv = 0, suv = 0;
        for (const auto& p : pts) {
            su += p[0];
            sv += p[1];
            suv += p[0] * p[1];
        }
        const double scale = 1 + std::abs(su) + std::abs(sv) + std::abs(suv);
        CHECK(std::abs(m.Mu.trace() - su) < 1e-9 * scale);
        CHECK(std::abs(m.Mv.trace() - sv) < 1e-9 * scale);
        CHECK(std::abs((m.Mu * m.Mv).trace() - suv) < 1e-9 * scale);
        CHECK((m.Mu * m.Mv - m.Mv * m.Mu).norm() < 1e-9 * (1 + m.Mu.norm() * m.Mv.norm()));
        CHECK(fiber_residual(NumericChart::of(c), t.to_complex(), pts) < 1e-10);
    }
}

TEST_CASE("exact and floating fiber points agree") {
    const FlatChart& c = chart(2);
    const GaussianRational t(mpq_class(1, 3), mpq_class(-2, 5));
    const auto exact = fiber_points(c, t);
    const auto numeric = fiber_points(NumericChart::of(c), t.to_complex());
    REQUIRE(exact.size() == numeric.size());
    for (const auto& p : exact) {
        const FiberPoint& q = nearest(numeric, p);
        CHECK(std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]) < 1e-9);
    }
}

TEST_CASE("point derivatives match central differences") {
    const double h = 1e-6;
    for (int r = 1; r <= 2; ++r) {
        const NumericChart base = NumericChart::of(chart(r));
        const auto basis = real_tangent_basis(chart(r));
        for (const cd t : {cd(0.5, 0), cd(-0.3, 1.1)}) {
            const auto pts = fiber_points(base, t);
            for (std::size_t b = 0; b < basis.size(); b += 3) {
                const auto plus = fiber_points(base.perturbed(basis[b], h), t);
                const auto minus = fiber_points(base.perturbed(basis[b], -h), t);
                for (const auto& p : pts) {
                    const FiberPoint d = point_derivative(base, t, p, basis[b]);
                    const FiberPoint& a = nearest(plus, p);
                    const FiberPoint& z = nearest(minus, p);
                    for (int i = 0; i < 2; ++i) {
                        const cd fd = (a[i] - z[i]) / (2 * h);
                        CHECK(std::abs(fd - d[i]) < 1e-6 * (1 + std::abs(d[i])));
                    }
                }
            }
        }
    }
}

TEST_CASE("the fibrewise form is bilinear and antisymmetric") {
    const NumericChart base = NumericChart::of(chart(2));
    const auto basis = real_tangent_basis(chart(2));
    const cd t(0.7, -0.2);
    const auto pts = fiber_points(base, t);
    TangentSection sum{basis[1].dA3 + GaussianRational(2) * basis[4].dA3,
                       basis[1].dA4 + GaussianRational(2) * basis[4].dA4};
    for (std::size_t z : {0u, 5u, 9u}) {
        const cd lhs = symplectic_sample(base, t, pts, sum, basis[z]);
        const cd rhs = symplectic_sample(base, t, pts, basis[1], basis[z]) +
                       2.0 * symplectic_sample(base, t, pts, basis[4], basis[z]);
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs)));
        CHECK(std::abs(symplectic_sample(base, t, pts, basis[z], basis[3]) +
                       symplectic_sample(base, t, pts, basis[3], basis[z])) < 1e-12);
        CHECK(std::abs(symplectic_sample(base, t, pts, basis[z], basis[z])) < 1e-12);
    }
}

TEST_CASE("quadratic fit recovers exact coefficients") {
    const cd c0(1, 2), c1(-0.5, 0.25), c2(3, -1);
    std::vector<std::pair<cd, cd>> samples;
    for (const auto& t : sample_fibers(7)) {
        const cd z = t.to_complex();
        samples.emplace_back(z, c0 + c1 * z + c2 * z * z);
    }
    const QuadraticFit fit = fit_quadratic(samples);
    CHECK(std::abs(fit.c0 - c0) < 1e-12);
    CHECK(std::abs(fit.c1 - c1) < 1e-12);
    CHECK(std::abs(fit.c2 - c2) < 1e-12);
    CHECK(fit.residual < 1e-12);
}

TEST_CASE("sample fibers lie on two circles without antipodal pairs") {
    const auto ts = sample_fibers(12);
    REQUIRE(ts.size() == 12);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const mpq_class n = ts[i].norm2();
        CHECK((n == mpq_class(1, 4) || n == 4));
        for (std::size_t k = 0; k < ts.size(); ++k)
            if (k != i) CHECK_FALSE((ts[i] * ts[k].conj() + 1).is_zero());
    }
    CHECK_THROWS(sample_fibers(13));
}

TEST_CASE("the r = 1 metric is the identity on the reference basis") {
    const HKFrame f = extract_metric(chart(1), sample_fibers());
    CHECK((f.gram - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-10);
    CHECK(f.signature == std::pair{4, 0});
    CHECK(f.quaternion_residual < 1e-10);
}

TEST_CASE("r = 2 metric is compatible with the quaternionic triple") {
    const HKFrame f = extract_metric(chart(2), sample_fibers());
    CHECK(f.gram.rows() == 12);
    CHECK(f.fit_residual < 1e-8);
    CHECK(f.symmetry_residual < 1e-8);
    CHECK(f.compatibility_residual < 1e-8);
    CHECK(f.cross_residual < 1e-6);
    CHECK(f.signature.first + f.signature.second == 12);
    CHECK(f.signature.first % 4 == 0);
}

TEST_CASE("flatness scan and negative control") {
    const MetricReport one = flatness_scan(1, 3, 7);
    CHECK(one.passed);
    CHECK(one.deviation < 1e-8);
    const MetricReport two = flatness_scan(2, 3, 7);
    CHECK(two.passed);
    CHECK(two.signature_constant);
    CHECK(two.deviation < 1e-6);
    // observed signature of the r = 2 family
    CHECK(two.frames.front().signature == std::pair{4, 8});
    MetricScanOptions raw;
    raw.skip_sigma_gauge = true;
    const MetricReport broken = flatness_scan(2, 3, 7, raw);
    CHECK_FALSE(broken.passed);
    CHECK(broken.deviation > 1e-3);
}
