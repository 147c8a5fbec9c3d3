#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "twistor/linear_matrix.hpp"
#include "twistor/poly.hpp"

namespace twistor {

struct CurveInvariants {
    int d = 0;  ///< r(r+1)/2
    int g = 0;  ///< (r-1)(r-2)(2r+3)/6
};

CurveInvariants invariants(int r);

/// Determinantal curve cut out by the maximal minors of an (r+1) x r linear matrix.
struct AcmCurve {
    LinearMatrix matrix;
    std::vector<HomogPoly> minors;  ///< minor j = (-1)^j det(phi without row j)
    int d = 0;
    int g = 0;
    bool base_avoiding = false;
    bool exact = false;  ///< resolution certified degree by degree
    bool sigma_invariant = false;

    int r() const { return matrix.r; }
    bool certified() const { return base_avoiding && exact; }
};

std::vector<HomogPoly> maximal_minors(const LinearMatrix& m);

/// Computes minors and all three flags.
AcmCurve make_curve(LinearMatrix m);

bool avoids_base_line(const AcmCurve& c);

/// dim of the degree-k piece of the ideal if the linear resolution
/// 0 -> O(-r-1)^r -> O(-r)^(r+1) -> I_C -> 0 is exact.
std::size_t predicted_ideal_dimension(int r, int k);

struct CertificationRow {
    int k = 0;
    std::size_t actual = 0;
    std::size_t predicted = 0;
};

struct CertificationReport {
    std::vector<CertificationRow> rows;  ///< k = 0 .. 2r+2
    bool passed = false;
    std::optional<int> first_mismatch;
};

/// Compares the rank of {monomial * minor} in each degree k <= 2r+2 with the
/// prediction. Runs on any input; a failure usually means the minors share a factor.
CertificationReport certify_resolution(const AcmCurve& c);

/// Zero-dimensional scheme in a fiber plane P^2 with coordinates (x1, x2, x3),
/// given by homogeneous generators. For a curve the fiber over [z3:z4] is cut
/// out by the minors of A1 x1 + A2 x2 + (z3 A3 + z4 A4) x3; the affine chart
/// x3 = 1 has coordinates (u, v) = (x1, x2).
class FiberScheme {
public:
    /// Hand-built scheme; `r` is the expected stratum index.
    FiberScheme(std::vector<HomogPoly> generators, int r);

    int r() const { return r_; }
    const std::vector<HomogPoly>& generators() const { return generators_; }

    /// H(0..max_degree()), computed on first use.
    const std::vector<std::size_t>& hilbert_function() const;
    /// Value of H in the top computed degree.
    std::size_t length() const { return hilbert_function().back(); }
    int max_degree() const;

private:
    std::vector<HomogPoly> generators_;
    int r_;
    mutable std::vector<std::size_t> hilbert_;
};

/// Fiber over zeta = [z3 : z4]. Throws std::invalid_argument for an uncertified
/// curve or for z3 = z4 = 0.
FiberScheme restrict_to_fiber(const AcmCurve& c, const GaussianRational& z3, const GaussianRational& z4);
/// Fiber over zeta = [1 : t].
FiberScheme restrict_to_fiber(const AcmCurve& c, const GaussianRational& t);

/// H(k) = C(k+2, 2) - dim I_k for k = 0 .. max_degree.
std::vector<std::size_t> fiber_hilbert_function(const FiberScheme& f);

/// H(k) of a fiber in the open stratum: C(k+2,2) for k < r, r(r+1)/2 afterwards.
std::size_t expected_fiber_hilbert(int r, int k);

/// True iff H(k) = C(k+2, 2) for every k < r.
bool stratum_check(const FiberScheme& f);

}  // namespace twistor
