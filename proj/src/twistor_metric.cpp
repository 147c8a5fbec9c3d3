#include "twistor/twistor_metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twistor/pencil.hpp"

namespace twistor {

using cd = std::complex<double>;

FlatChart normalize_to_flat_chart(const AcmCurve& c) {
    if (!c.base_avoiding) throw std::invalid_argument("normalize_to_flat_chart: curve meets the base line");
    if (!c.certified()) throw std::invalid_argument("normalize_to_flat_chart: curve is not certified");
    if (!c.sigma_invariant) throw std::invalid_argument("normalize_to_flat_chart: curve is not sigma-invariant");
    const KroneckerReduction red = kronecker_reduce(c.matrix.base_pencil());
    FlatChart chart{c.matrix.transformed(red.P, red.Q), canonical_sigma_gauge(c.r()), true};
    // The stabilizer of (S, T) acts trivially on phi, so once (A1, A2) = (S, T)
    // the reality constraint must already hold in the canonical gauge.
    if (sigma_partner_A4(chart.gauge, chart.matrix.A3()) != chart.matrix.A4())
        throw std::logic_error("normalize_to_flat_chart: transported x3/x4 block violates the reality constraint");
    return chart;
}

FlatChart raw_chart(const AcmCurve& c) {
    auto gauge = find_sigma_gauge(c.matrix);
    if (!gauge) throw std::invalid_argument("raw_chart: curve has no sigma gauge");
    return {c.matrix, *gauge, false};
}

std::vector<TangentSection> real_tangent_basis(const FlatChart& chart) {
    const int r = chart.r();
    std::vector<TangentSection> basis;
    basis.reserve(2 * r * (r + 1));
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j < r; ++j)
            for (const GaussianRational& unit : {GaussianRational(1), GaussianRational::i()}) {
                ExactMatrix a(r + 1, r);
                a(i, j) = unit;
                ExactMatrix b = sigma_partner_A4(chart.gauge, a);
                basis.push_back({std::move(a), std::move(b)});
            }
    return basis;
}

std::vector<mpq_class> tangent_coordinates(const TangentSection& x) {
    std::vector<mpq_class> coords;
    coords.reserve(2 * x.dA3.rows() * x.dA3.cols());
    for (std::size_t i = 0; i < x.dA3.rows(); ++i)
        for (std::size_t j = 0; j < x.dA3.cols(); ++j) {
            coords.push_back(x.dA3(i, j).real());
            coords.push_back(x.dA3(i, j).imag());
        }
    return coords;
}

ComplexStructures complex_structures(const SigmaGauge& gauge, int r) {
    std::vector<TangentSection> basis;
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j < r; ++j)
            for (const GaussianRational& unit : {GaussianRational(1), GaussianRational::i()}) {
                ExactMatrix a(r + 1, r);
                a(i, j) = unit;
                basis.push_back({a, sigma_partner_A4(gauge, a)});
            }
    const std::size_t n = basis.size();
    const GaussianRational i_unit = GaussianRational::i();
    ComplexStructures cs{ExactMatrix(n, n), ExactMatrix(n, n), ExactMatrix(n, n)};
    auto set_column = [&](ExactMatrix& op, std::size_t col, const TangentSection& image) {
        if (sigma_partner_A4(gauge, image.dA3) != image.dA4)
            throw std::logic_error("complex structure leaves the real tangent space");
        const auto coords = tangent_coordinates(image);
        for (std::size_t row = 0; row < n; ++row) op(row, col) = GaussianRational(coords[row]);
    };
    for (std::size_t k = 0; k < n; ++k) {
        const auto& [a, b] = basis[k];
        set_column(cs.I, k, {i_unit * a, GaussianRational(0, -1) * b});
        set_column(cs.J, k, {i_unit * b, i_unit * a});
        set_column(cs.K, k, {GaussianRational(-1) * b, a});
    }
    return cs;
}

ComplexStructures complex_structures(int r) { return complex_structures(canonical_sigma_gauge(r), r); }

NumericChart NumericChart::of(const FlatChart& chart) {
    NumericChart n;
    n.r = chart.r();
    for (int k = 0; k < 4; ++k) n.A[k] = chart.matrix.A[k].to_complex();
    return n;
}

NumericChart NumericChart::perturbed(const TangentSection& x, double h) const {
    NumericChart n = *this;
    n.A[2] += h * x.dA3.to_complex();
    n.A[3] += h * x.dA4.to_complex();
    return n;
}

namespace {

Eigen::MatrixXcd drop_row(const Eigen::MatrixXcd& m, int row) {
    Eigen::MatrixXcd out(m.rows() - 1, m.cols());
    for (int i = 0, k = 0; i < m.rows(); ++i)
        if (i != row) out.row(k++) = m.row(i);
    return out;
}

cd det(const Eigen::MatrixXcd& m) { return m.rows() == 0 ? cd(1) : m.determinant(); }

// d/de det(B + e C) at e = 0, one column at a time.
cd det_derivative(const Eigen::MatrixXcd& B, const Eigen::MatrixXcd& C) {
    cd sum = 0;
    Eigen::MatrixXcd work = B;
    for (int col = 0; col < B.cols(); ++col) {
        work.col(col) = C.col(col);
        sum += det(work);
        work.col(col) = B.col(col);
    }
    return sum;
}

Eigen::MatrixXcd fiber_block(const NumericChart& c, cd t) { return c.A[2] + t * c.A[3]; }

Eigen::MatrixXcd psi_at(const NumericChart& c, cd t, const FiberPoint& p) {
    return c.A[0] * p[0] + c.A[1] * p[1] + fiber_block(c, t);
}

// Value, gradient and Hadamard bound of minor j at a point.
struct MinorJet {
    cd value, du, dv;
    double scale;
};

MinorJet minor_jet(const NumericChart& c, cd t, const FiberPoint& p, int j) {
    const Eigen::MatrixXcd B = drop_row(psi_at(c, t, p), j);
    MinorJet jet{det(B), det_derivative(B, drop_row(c.A[0], j)), det_derivative(B, drop_row(c.A[1], j)), 1.0};
    for (int col = 0; col < B.cols(); ++col) jet.scale *= std::max(B.col(col).norm(), 1e-300);
    return jet;
}

struct BestPair {
    int a = -1, b = -1;
    Eigen::Matrix2cd jac;
};

BestPair best_pair(const std::vector<MinorJet>& jets) {
    BestPair best;
    double top = -1;
    for (int a = 0; a < static_cast<int>(jets.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(jets.size()); ++b) {
            Eigen::Matrix2cd jac;
            jac << jets[a].du, jets[a].dv, jets[b].du, jets[b].dv;
            const double m = std::abs(jac.determinant());
            if (m > top) {
                top = m;
                best = {a, b, jac};
            }
        }
    return best;
}

std::vector<MinorJet> all_jets(const NumericChart& c, cd t, const FiberPoint& p) {
    std::vector<MinorJet> jets;
    for (int j = 0; j <= c.r; ++j) jets.push_back(minor_jet(c, t, p, j));
    return jets;
}

// Newton on the best-conditioned pair of minors.
FiberPoint refine(const NumericChart& c, cd t, FiberPoint p) {
    for (int iter = 0; iter < 8; ++iter) {
        const auto jets = all_jets(c, t, p);
        const BestPair pair = best_pair(jets);
        if (pair.a < 0 || std::abs(pair.jac.determinant()) == 0) break;
        const Eigen::Vector2cd rhs(jets[pair.a].value, jets[pair.b].value);
        const Eigen::Vector2cd step = pair.jac.partialPivLu().solve(rhs);
        p[0] -= step(0);
        p[1] -= step(1);
        if (step.norm() <= 1e-15 * (1 + std::abs(p[0]) + std::abs(p[1]))) break;
    }
    return p;
}

// Maximal minors in (x1, x2, x3) of A1 x1 + A2 x2 + M x3 as coefficient
// vectors over monomial_basis(3, r).
std::vector<Eigen::VectorXcd> numeric_minors(const Eigen::MatrixXcd& A1, const Eigen::MatrixXcd& A2,
                                             const Eigen::MatrixXcd& M) {
    const int r = static_cast<int>(A1.cols());
    std::vector<Eigen::VectorXcd> out;
    std::size_t assignments = 1;
    for (int k = 0; k < r; ++k) assignments *= 3;
    for (int j = 0; j <= r; ++j) {
        Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(monomial_count(3, r)));
        std::array<Eigen::MatrixXcd, 3> reduced{drop_row(A1, j), drop_row(A2, j), drop_row(M, j)};
        Eigen::MatrixXcd work(r, r);
        for (std::size_t code = 0; code < assignments; ++code) {
            Exponent e(3, 0);
            std::size_t rest = code;
            for (int col = 0; col < r; ++col, rest /= 3) {
                const int var = static_cast<int>(rest % 3);
                work.col(col) = reduced[var].col(col);
                ++e[var];
            }
            coeffs(static_cast<Eigen::Index>(monomial_index(e))) += det(work);
        }
        out.push_back(j % 2 ? Eigen::VectorXcd(-coeffs) : coeffs);
    }
    return out;
}

// Orthonormal basis of the orthogonal complement of span(columns), which must
// have codimension `dim`.
Eigen::MatrixXcd complement(const Eigen::MatrixXcd& span, std::size_t dim) {
    const Eigen::Index n = span.rows();
    const Eigen::Index keep = n - static_cast<Eigen::Index>(dim);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(span, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    const double top = s.size() ? s(0) : 0.0;
    if (keep > 0 && (keep > s.size() || s(keep - 1) <= 1e-11 * top))
        throw ExtractionFailure("fiber ideal has too small a graded piece; fiber is outside the open stratum");
    if (keep < s.size() && s(keep) > 1e-9 * top)
        throw ExtractionFailure("fiber ideal has too large a graded piece; fiber length is not d");
    return svd.matrixU().rightCols(static_cast<Eigen::Index>(dim));
}

// Multiplication by x_var from degree D to D+1 on coefficient vectors.
Eigen::MatrixXcd shift_matrix(int degree, int var) {
    const auto& src = monomial_basis(3, degree);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(monomial_count(3, degree + 1)),
                                                static_cast<Eigen::Index>(src.size()));
    for (std::size_t k = 0; k < src.size(); ++k) {
        Exponent e = src[k];
        ++e[var];
        m(static_cast<Eigen::Index>(monomial_index(e)), static_cast<Eigen::Index>(k)) = 1;
    }
    return m;
}

const cd kCombination(0.6180339887498949, 0.4142135623730951);

std::vector<FiberPoint> points_from_operators(const NumericChart& chart, cd t, const MultiplicationOperators& ops) {
    const Eigen::MatrixXcd M = ops.Mu + kCombination * ops.Mv;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    if (es.info() != Eigen::Success) throw ExtractionFailure("eigenvalue computation did not converge");
    const auto& lambda = es.eigenvalues();
    double scale = 1;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) scale = std::max(scale, std::abs(lambda(k)));
    for (Eigen::Index a = 0; a < lambda.size(); ++a)
        for (Eigen::Index b = a + 1; b < lambda.size(); ++b)
            if (std::abs(lambda(a) - lambda(b)) < 1e-7 * scale) {
                std::ostringstream os;
                os << "fiber over t = " << t << " is not reduced (clustered eigenvalues); resample t";
                throw NonReducedFiber(os.str());
            }
    std::vector<FiberPoint> points;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        const Eigen::VectorXcd w = es.eigenvectors().col(k);
        const cd norm = w.squaredNorm();
        FiberPoint p{w.dot(ops.Mu * w) / norm, w.dot(ops.Mv * w) / norm};
        points.push_back(refine(chart, t, p));
    }
    const double res = fiber_residual(chart, t, points);
    if (!(res < 1e-10)) {
        std::ostringstream os;
        os << "fiber point residual " << res << " exceeds 1e-10 at t = " << t;
        throw ExtractionFailure(os.str());
    }
    return points;
}

cd to_cd(const GaussianRational& z) { return z.to_complex(); }

}  // namespace

MultiplicationOperators multiplication_operators(const NumericChart& chart, cd t) {
    const int r = chart.r;
    const std::size_t d = static_cast<std::size_t>(r * (r + 1) / 2);
    const auto gens = numeric_minors(chart.A[0], chart.A[1], fiber_block(chart, t));
    const Eigen::Index n0 = static_cast<Eigen::Index>(monomial_count(3, r));
    Eigen::MatrixXcd span0(n0, static_cast<Eigen::Index>(gens.size()));
    for (std::size_t j = 0; j < gens.size(); ++j) span0.col(static_cast<Eigen::Index>(j)) = gens[j];
    std::array<Eigen::MatrixXcd, 3> shift{shift_matrix(r, 0), shift_matrix(r, 1), shift_matrix(r, 2)};
    Eigen::MatrixXcd span1(shift[0].rows(), 3 * span0.cols());
    for (int v = 0; v < 3; ++v) span1.middleCols(v * span0.cols(), span0.cols()) = shift[v] * span0;
    const Eigen::MatrixXcd Q0 = complement(span0, d);
    const Eigen::MatrixXcd Q1 = complement(span1, d);
    const Eigen::MatrixXcd X0 = Q1.adjoint() * shift[2] * Q0;
    const auto lu = X0.fullPivLu();
    if (!lu.isInvertible()) throw ExtractionFailure("multiplication by x3 is singular on the fiber quotient");
    return {lu.solve(Eigen::MatrixXcd(Q1.adjoint() * shift[0] * Q0)),
            lu.solve(Eigen::MatrixXcd(Q1.adjoint() * shift[1] * Q0))};
}

MultiplicationOperators multiplication_operators(const FlatChart& chart, const GaussianRational& t) {
    const LinearMatrix& m = chart.matrix;
    const int r = m.r;
    const auto gens = maximal_minors(PolyMatrix::linear({m.A1(), m.A2(), m.A3() + t * m.A4()}));
    const QuotientPiece q0(gens, 3, r), q1(gens, 3, r + 1);
    const std::size_t d = static_cast<std::size_t>(r * (r + 1) / 2);
    if (q0.dimension() != d || q1.dimension() != d)
        throw ExtractionFailure("fiber quotient has dimension " + std::to_string(q1.dimension()) + ", expected " +
                                std::to_string(d));
    const auto& monomials = monomial_basis(3, r);
    std::array<ExactMatrix, 3> X{ExactMatrix(d, d), ExactMatrix(d, d), ExactMatrix(d, d)};
    for (std::size_t b = 0; b < d; ++b) {
        const HomogPoly mono = HomogPoly::from_terms(3, {{monomials[q0.basis()[b]], GaussianRational(1)}});
        for (int v = 0; v < 3; ++v) {
            const auto nf = q1.normal_form(HomogPoly::variable(3, v) * mono);
            for (std::size_t k = 0; k < d; ++k) X[v](k, b) = nf[k];
        }
    }
    ExactMatrix inv;
    try {
        inv = inverse(X[2]);
    } catch (const std::domain_error&) {
        throw ExtractionFailure("multiplication by x3 is singular on the fiber quotient");
    }
    return {(inv * X[0]).to_complex(), (inv * X[1]).to_complex()};
}

std::vector<FiberPoint> fiber_points(const FlatChart& chart, const GaussianRational& t) {
    return points_from_operators(NumericChart::of(chart), to_cd(t), multiplication_operators(chart, t));
}

std::vector<FiberPoint> fiber_points(const NumericChart& chart, cd t) {
    return points_from_operators(chart, t, multiplication_operators(chart, t));
}

double fiber_residual(const NumericChart& chart, cd t, const std::vector<FiberPoint>& points) {
    double worst = 0;
    for (const auto& p : points) {
        const Eigen::MatrixXcd psi = psi_at(chart, t, p);
        for (int j = 0; j <= chart.r; ++j) {
            const Eigen::MatrixXcd B = drop_row(psi, j);
            double bound = 1;
            for (int col = 0; col < B.cols(); ++col) bound *= B.col(col).norm();
            if (bound == 0) continue;
            worst = std::max(worst, std::abs(det(B)) / bound);
        }
    }
    return worst;
}

FiberPoint point_derivative(const NumericChart& chart, cd t, const FiberPoint& point, const TangentSection& x) {
    const auto jets = all_jets(chart, t, point);
    const BestPair pair = best_pair(jets);
    if (pair.a < 0 || std::abs(pair.jac.determinant()) <= 1e-14 * jets[pair.a].scale * jets[pair.b].scale)
        throw ExtractionFailure("all Jacobian pairs are singular; the fiber point is not simple");
    const Eigen::MatrixXcd dM = x.dA3.to_complex() + t * x.dA4.to_complex();
    const Eigen::MatrixXcd psi = psi_at(chart, t, point);
    Eigen::Vector2cd rhs;
    int k = 0;
    for (int j : {pair.a, pair.b}) rhs(k++) = det_derivative(drop_row(psi, j), drop_row(dM, j));
    const Eigen::Vector2cd delta = -pair.jac.partialPivLu().solve(rhs);
    return {delta(0), delta(1)};
}

std::complex<double> symplectic_sample(const NumericChart& chart, cd t, const std::vector<FiberPoint>& points,
                                       const TangentSection& x, const TangentSection& y) {
    cd sum = 0;
    for (const auto& p : points) {
        const FiberPoint dx = point_derivative(chart, t, p, x);
        const FiberPoint dy = point_derivative(chart, t, p, y);
        sum += dx[0] * dy[1] - dx[1] * dy[0];
    }
    return sum;
}

QuadraticFit fit_quadratic(const std::vector<std::pair<cd, cd>>& samples) {
    if (samples.size() < 3) throw std::invalid_argument("fit_quadratic needs at least three samples");
    const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXcd V(m, 3);
    Eigen::VectorXcd y(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const cd t = samples[static_cast<std::size_t>(k)].first;
        V(k, 0) = 1;
        V(k, 1) = t;
        V(k, 2) = t * t;
        y(k) = samples[static_cast<std::size_t>(k)].second;
    }
    const Eigen::VectorXcd c = V.colPivHouseholderQr().solve(y);
    return {c(0), c(1), c(2), (V * c - y).norm()};
}

std::vector<GaussianRational> sample_fibers(std::size_t count) {
    // t = rho ((1 - m^2) + 2 m i) / (1 + m^2); the antipode of t is -1/conj(t).
    static const std::vector<std::pair<mpq_class, mpq_class>> circle_points = {
        {mpq_class(1, 2), mpq_class(0)},  {mpq_class(1, 2), mpq_class(1, 3)}, {mpq_class(1, 2), mpq_class(2)},
        {mpq_class(1, 2), mpq_class(-2)}, {mpq_class(2), mpq_class(1)},       {mpq_class(2), mpq_class(3)},
        {mpq_class(2), mpq_class(-1, 3)}, {mpq_class(1, 2), mpq_class(1, 2)}, {mpq_class(2), mpq_class(0)},
        {mpq_class(1, 2), mpq_class(-1, 2)}, {mpq_class(2), mpq_class(-1)},   {mpq_class(2), mpq_class(1, 3)},
    };
    if (count > circle_points.size())
        throw std::invalid_argument("at most " + std::to_string(circle_points.size()) + " sample fibers available");
    std::vector<GaussianRational> out;
    for (std::size_t k = 0; k < count; ++k) {
        const auto& [rho, m] = circle_points[k];
        const mpq_class den = 1 + m * m;
        out.emplace_back(rho * (1 - m * m) / den, rho * 2 * m / den);
    }
    return out;
}

namespace {

Eigen::MatrixXd to_real(const ExactMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).real().get_d();
    return out;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

HKFrame extract_metric(const FlatChart& chart, const std::vector<GaussianRational>& fibers,
                       const MetricTolerances& tol) {
    const int r = chart.r();
    const auto basis = real_tangent_basis(chart);
    const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    const NumericChart numeric = NumericChart::of(chart);

    HKFrame frame;
    std::vector<Eigen::MatrixXcd> omegas;
    for (const auto& t_exact : fibers) {
        std::vector<FiberPoint> points;
        try {
            points = fiber_points(chart, t_exact);
        } catch (const NonReducedFiber&) {
            continue;
        }
        const cd t = to_cd(t_exact);
        std::vector<std::vector<FiberPoint>> deltas(points.size());
        for (std::size_t p = 0; p < points.size(); ++p)
            for (const auto& x : basis) deltas[p].push_back(point_derivative(numeric, t, points[p], x));
        Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = a + 1; b < n; ++b) {
                cd sum = 0;
                for (const auto& dp : deltas) sum += dp[a][0] * dp[b][1] - dp[a][1] * dp[b][0];
                omega(a, b) = sum;
                omega(b, a) = -sum;
            }
        frame.fibers.push_back(t);
        omegas.push_back(std::move(omega));
    }
    if (omegas.size() < 5)
        throw ExtractionFailure("only " + std::to_string(omegas.size()) + " reduced sample fibers, need 5");

    frame.omega_I = Eigen::MatrixXd::Zero(n, n);
    frame.omega_J = Eigen::MatrixXd::Zero(n, n);
    frame.omega_K = Eigen::MatrixXd::Zero(n, n);
    double worst_misfit = 0, scale = 0;
    const cd two_i(0, 2);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) {
            std::vector<std::pair<cd, cd>> samples;
            for (std::size_t k = 0; k < omegas.size(); ++k) {
                samples.emplace_back(frame.fibers[k], omegas[k](a, b));
                scale = std::max(scale, std::abs(omegas[k](a, b)));
            }
            const QuadraticFit fit = fit_quadratic(samples);
            worst_misfit = std::max(worst_misfit, fit.residual);
            frame.omega_I(a, b) = (fit.c1 / two_i).real();
            frame.omega_J(a, b) = ((fit.c0 - fit.c2) / two_i).real();
            frame.omega_K(a, b) = -((fit.c0 + fit.c2) / 2.0).real();
            frame.omega_I(b, a) = -frame.omega_I(a, b);
            frame.omega_J(b, a) = -frame.omega_J(a, b);
            frame.omega_K(b, a) = -frame.omega_K(a, b);
        }
    frame.fit_residual = scale > 0 ? worst_misfit / scale : worst_misfit;

    const ComplexStructures cs = complex_structures(chart.gauge, r);
    frame.I = to_real(cs.I);
    frame.J = to_real(cs.J);
    frame.K = to_real(cs.K);
    frame.gram = -frame.omega_I * frame.I;

    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    frame.quaternion_residual =
        std::max({max_abs(frame.I * frame.I + id), max_abs(frame.J * frame.J + id), max_abs(frame.K * frame.K + id),
                  max_abs(frame.I * frame.J - frame.K)});
    const double gscale = std::max(max_abs(frame.gram), 1e-300);
    frame.symmetry_residual = max_abs(frame.gram - frame.gram.transpose()) / gscale;
    for (const Eigen::MatrixXd* q : {&frame.I, &frame.J, &frame.K})
        frame.compatibility_residual = std::max(frame.compatibility_residual,
                                                max_abs(q->transpose() * frame.gram * *q - frame.gram) / gscale);
    frame.cross_residual = std::max(max_abs(frame.omega_J - frame.J.transpose() * frame.gram),
                                    max_abs(frame.omega_K - frame.K.transpose() * frame.gram)) /
                           gscale;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (frame.gram + frame.gram.transpose()));
    const double emax = eig.eigenvalues().cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double e = eig.eigenvalues()(k);
        if (e > 1e-8 * emax) ++frame.signature.first;
        else if (e < -1e-8 * emax) ++frame.signature.second;
    }

    std::ostringstream problems;
    if (!(frame.fit_residual < tol.fit)) problems << " quadratic fit residual " << frame.fit_residual << ";";
    if (!(frame.symmetry_residual < tol.symmetry)) problems << " Gram asymmetry " << frame.symmetry_residual << ";";
    if (!(frame.compatibility_residual < tol.compatibility))
        problems << " g(QX,QY) != g(X,Y) by " << frame.compatibility_residual << ";";
    if (!(frame.cross_residual < tol.cross)) problems << " omega_J/omega_K cross check off by " << frame.cross_residual << ";";
    if (!problems.str().empty()) throw ExtractionFailure("metric extraction failed:" + problems.str());
    return frame;
}

double flatness_threshold(int r) { return r == 1 ? 1e-8 : 1e-6; }

std::uint64_t chart_seed(std::uint64_t seed, std::size_t index) {
    // splitmix64 of (seed, index)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

AcmCurve random_chart_curve(int r, std::uint64_t seed) {
    for (std::size_t attempt = 0; attempt < 64; ++attempt) {
        AcmCurve c = make_curve(make_sigma_invariant_pencil(r, chart_seed(seed, attempt)));
        if (c.certified() && c.sigma_invariant) return c;
    }
    throw std::runtime_error("random_chart_curve: no certified sigma-invariant curve found");
}

void summarize(MetricReport& report) {
    report.threshold = flatness_threshold(report.r);
    if (report.frames.empty()) {
        report.passed = false;
        return;
    }
    report.mean_gram = Eigen::MatrixXd::Zero(report.frames[0].gram.rows(), report.frames[0].gram.cols());
    for (const auto& f : report.frames) report.mean_gram += f.gram;
    report.mean_gram /= static_cast<double>(report.frames.size());
    const double scale = std::max(max_abs(report.mean_gram), 1e-300);
    report.deviation = 0;
    report.signature_constant = true;
    for (const auto& f : report.frames) {
        report.deviation = std::max(report.deviation, max_abs(f.gram - report.mean_gram) / scale);
        report.signature_constant = report.signature_constant && f.signature == report.frames[0].signature;
    }
    report.passed = report.deviation < report.threshold && report.signature_constant;
}

MetricReport flatness_scan(int r, std::size_t num_points, std::uint64_t seed, const MetricScanOptions& options) {
    if (r < 1) throw std::invalid_argument("flatness_scan needs r >= 1");
    MetricReport report;
    report.r = r;
    const auto fibers = sample_fibers(options.fibers);
    for (std::size_t k = 0; k < num_points; ++k) {
        const std::uint64_t s = chart_seed(seed, k);
        const AcmCurve c = random_chart_curve(r, s);
        const FlatChart chart = options.skip_sigma_gauge ? raw_chart(c) : normalize_to_flat_chart(c);
        try {
            report.frames.push_back(extract_metric(chart, fibers));
        } catch (const ExtractionFailure& e) {
            throw ExtractionFailure(std::string(e.what()) + " (chart seed " + std::to_string(s) + ")");
        }
        report.seeds.push_back(s);
    }
    summarize(report);
    return report;
}

}  // namespace twistor
