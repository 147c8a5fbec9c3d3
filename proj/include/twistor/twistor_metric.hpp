#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "twistor/acm_curve.hpp"
#include "twistor/reality.hpp"

namespace twistor {

/// Coordinates (A3, A4) on the moduli space once (A1, A2) is fixed, together
/// with the gauge that expresses the reality constraint A4 = conj(G A3 H).
/// A normalized chart has (A1, A2) = (S, T) and the canonical gauge.
struct FlatChart {
    LinearMatrix matrix;
    SigmaGauge gauge;
    bool normalized = false;

    int r() const { return matrix.r; }
};

/// Kronecker-reduces (A1, A2), transports (A3, A4) and checks the reality
/// constraint in the canonical gauge. Throws std::invalid_argument for a curve
/// that is not certified, not sigma-invariant or meets the base line.
FlatChart normalize_to_flat_chart(const AcmCurve& c);

/// The un-normalized coordinates of the curve with its own sigma gauge.
FlatChart raw_chart(const AcmCurve& c);

/// First-order deformation t -> dA3 + t dA4 of the x3/x4 block.
struct TangentSection {
    ExactMatrix dA3, dA4;
};

/// Exact basis of the real solution space of dA4 = conj(G dA3 H): dA3 runs
/// through E_ij and i E_ij, (i, j) row-major, real before imaginary for each entry.
std::vector<TangentSection> real_tangent_basis(const FlatChart& chart);

/// Coordinates (Re dA3, Im dA3) interleaved in the order of real_tangent_basis.
std::vector<mpq_class> tangent_coordinates(const TangentSection& x);

/// Real operators in the basis of real_tangent_basis, exact.
/// On (a, b) = (dA3, dA4): I(a,b) = (ia, -ib), J(a,b) = (ib, ia), K(a,b) = (-b, a).
struct ComplexStructures {
    ExactMatrix I, J, K;
};

ComplexStructures complex_structures(const SigmaGauge& gauge, int r);
ComplexStructures complex_structures(int r);

/// Floating copy of a chart, used for finite differences and complex t.
struct NumericChart {
    int r = 0;
    std::array<Eigen::MatrixXcd, 4> A;

    static NumericChart of(const FlatChart& chart);
    NumericChart perturbed(const TangentSection& x, double h) const;
};

class NonReducedFiber : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExtractionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A fiber point in the chart x3 = 1, (u, v) = (x1/x3, x2/x3).
using FiberPoint = std::array<std::complex<double>, 2>;

/// Multiplication operators by u and v on the degree-r piece of the fiber's
/// quotient ring, in a fixed basis (trace identity: trace M_u = sum of u).
struct MultiplicationOperators {
    Eigen::MatrixXcd Mu, Mv;
};

MultiplicationOperators multiplication_operators(const FlatChart& chart, const GaussianRational& t);
MultiplicationOperators multiplication_operators(const NumericChart& chart, std::complex<double> t);

/// The d points of the fiber over [1 : t]. The exact overload keeps all
/// linear algebra exact up to the eigenvalue step. Throws NonReducedFiber when
/// eigenvalues cluster and ExtractionFailure when a generator residual exceeds
/// 1e-10 relative.
std::vector<FiberPoint> fiber_points(const FlatChart& chart, const GaussianRational& t);
std::vector<FiberPoint> fiber_points(const NumericChart& chart, std::complex<double> t);

/// Largest relative generator residual at the given points.
double fiber_residual(const NumericChart& chart, std::complex<double> t, const std::vector<FiberPoint>& points);

/// (du, dv) of a simple fiber point along a tangent section, by implicit
/// differentiation of the best-conditioned pair of minors.
/// Throws ExtractionFailure if every pair has a singular Jacobian.
FiberPoint point_derivative(const NumericChart& chart, std::complex<double> t, const FiberPoint& point,
                            const TangentSection& x);

/// sum over fiber points of det [[du_X, dv_X], [du_Y, dv_Y]].
std::complex<double> symplectic_sample(const NumericChart& chart, std::complex<double> t,
                                       const std::vector<FiberPoint>& points, const TangentSection& x,
                                       const TangentSection& y);

struct QuadraticFit {
    std::complex<double> c0, c1, c2;
    double residual = 0;  ///< Euclidean norm of the misfit
};

/// Least squares c0 + c1 t + c2 t^2. Needs at least three distinct t.
QuadraticFit fit_quadratic(const std::vector<std::pair<std::complex<double>, std::complex<double>>>& samples);

/// Default sample fibers: rational points on |t| = 1/2 and |t| = 2, no two antipodal.
std::vector<GaussianRational> sample_fibers(std::size_t count = 7);

struct HKFrame {
    Eigen::MatrixXd gram;
    Eigen::MatrixXd I, J, K;
    Eigen::MatrixXd omega_I, omega_J, omega_K;
    std::pair<int, int> signature{0, 0};  ///< (positive, negative)
    double fit_residual = 0;              ///< max misfit / max |omega|
    double symmetry_residual = 0;         ///< |g - g^T| / |g|
    double compatibility_residual = 0;    ///< max over I, J, K of |g(QX, QY) - g| / |g|
    double cross_residual = 0;            ///< |omega_J - J^T g|, |omega_K - K^T g| relative
    double quaternion_residual = 0;       ///< I^2 + 1, J^2 + 1, K^2 + 1, IJ - K
    std::vector<std::complex<double>> fibers;
};

/// Tolerances applied by extract_metric.
struct MetricTolerances {
    double fit = 1e-8;
    double symmetry = 1e-8;
    double compatibility = 1e-8;
    double cross = 1e-6;
};

/// Fits omega(X, Y)(t) on the sample fibers (non-reduced ones are skipped),
/// sets omega_I = Re(c1 / 2i) and g(X, Y) = -omega_I(X, I Y). The sign makes
/// the r = 1 Gram the identity on (E00, iE00, E10, iE10).
/// Throws ExtractionFailure when a tolerance is violated or fewer than 5
/// fibers are usable.
HKFrame extract_metric(const FlatChart& chart, const std::vector<GaussianRational>& fibers,
                       const MetricTolerances& tol = {});

struct MetricScanOptions {
    std::size_t fibers = 7;
    bool skip_sigma_gauge = false;  ///< negative control: use raw charts
};

struct MetricReport {
    int r = 0;
    std::vector<HKFrame> frames;
    std::vector<std::uint64_t> seeds;  ///< per chart, for make_sigma_invariant_pencil
    Eigen::MatrixXd mean_gram;
    double deviation = 0;  ///< max |G_k - mean| / max |mean|
    double threshold = 0;
    bool signature_constant = false;
    bool passed = false;
};

/// Pass threshold on the deviation: 1e-8 for r = 1, 1e-6 otherwise.
double flatness_threshold(int r);

/// Seed of chart i in a scan.
std::uint64_t chart_seed(std::uint64_t seed, std::size_t index);

/// Random sigma-invariant certified curve for a scan.
AcmCurve random_chart_curve(int r, std::uint64_t seed);

/// Gram at num_points random charts (each from random_chart_curve) and the
/// deviation from their mean. ExtractionFailure propagates with the chart seed.
MetricReport flatness_scan(int r, std::size_t num_points, std::uint64_t seed, const MetricScanOptions& options = {});

/// Summary statistics over already extracted frames.
void summarize(MetricReport& report);

}  // namespace twistor
