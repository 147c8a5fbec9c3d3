#include "twistor/acm_curve.hpp"

#include <algorithm>
#include <stdexcept>

#include "twistor/reality.hpp"

namespace twistor {

namespace {

std::size_t h0_P(int n, int m) { return monomial_count(n + 1, m); }

}  // namespace

CurveInvariants invariants(int r) {
    if (r < 1) throw std::invalid_argument("invariants: r must be positive");
    return {r * (r + 1) / 2, (r - 1) * (r - 2) * (2 * r + 3) / 6};
}

std::vector<HomogPoly> maximal_minors(const LinearMatrix& m) { return maximal_minors(m.forms()); }

AcmCurve make_curve(LinearMatrix m) {
    AcmCurve c;
    c.minors = maximal_minors(m);
    c.matrix = std::move(m);
    const auto inv = invariants(c.matrix.r);
    c.d = inv.d;
    c.g = inv.g;
    c.base_avoiding = is_injective_pencil(c.matrix.base_pencil());
    c.exact = certify_resolution(c).passed;
    c.sigma_invariant = is_sigma_invariant_ideal(c.minors, c.matrix.r);
    return c;
}

bool avoids_base_line(const AcmCurve& c) { return is_injective_pencil(c.matrix.base_pencil()); }

std::size_t predicted_ideal_dimension(int r, int k) {
    return (r + 1) * h0_P(3, k - r) - r * h0_P(3, k - r - 1);
}

CertificationReport certify_resolution(const AcmCurve& c) {
    CertificationReport report;
    const int r = c.r();
    for (int k = 0; k <= 2 * r + 2; ++k) {
        CertificationRow row{k, ideal_piece_dimension(c.minors, k), predicted_ideal_dimension(r, k)};
        if (row.actual != row.predicted && !report.first_mismatch) report.first_mismatch = k;
        report.rows.push_back(row);
    }
    report.passed = !report.first_mismatch.has_value();
    return report;
}

FiberScheme::FiberScheme(std::vector<HomogPoly> generators, int r) : generators_(std::move(generators)), r_(r) {
    if (r < 1) throw std::invalid_argument("FiberScheme: r must be positive");
    for (std::size_t k = 0; k < generators_.size(); ++k)
        if (generators_[k].num_vars() != 3)
            throw std::invalid_argument("FiberScheme: generator " + std::to_string(k) +
                                        " is not a form in three variables");
}

int FiberScheme::max_degree() const {
    int top = r_;
    for (const auto& g : generators_) top = std::max(top, g.degree());
    return top + 2;
}

const std::vector<std::size_t>& FiberScheme::hilbert_function() const {
    if (hilbert_.empty()) hilbert_ = fiber_hilbert_function(*this);
    return hilbert_;
}

FiberScheme restrict_to_fiber(const AcmCurve& c, const GaussianRational& z3, const GaussianRational& z4) {
    if (!c.certified()) throw std::invalid_argument("restrict_to_fiber: curve is not certified");
    if (z3.is_zero() && z4.is_zero()) throw std::invalid_argument("restrict_to_fiber: [0:0] is not a point");
    const LinearMatrix& m = c.matrix;
    const PolyMatrix psi = PolyMatrix::linear({m.A1(), m.A2(), z3 * m.A3() + z4 * m.A4()});
    return {maximal_minors(psi), c.r()};
}

FiberScheme restrict_to_fiber(const AcmCurve& c, const GaussianRational& t) { return restrict_to_fiber(c, 1, t); }

std::vector<std::size_t> fiber_hilbert_function(const FiberScheme& f) {
    std::vector<std::size_t> h;
    for (int k = 0; k <= f.max_degree(); ++k) h.push_back(h0_P(2, k) - ideal_piece_dimension(f.generators(), k));
    return h;
}

std::size_t expected_fiber_hilbert(int r, int k) {
    return k < r ? h0_P(2, k) : static_cast<std::size_t>(r * (r + 1) / 2);
}

bool stratum_check(const FiberScheme& f) {
    const auto& h = f.hilbert_function();
    for (int k = 0; k < f.r(); ++k)
        if (h[k] != h0_P(2, k)) return false;
    return true;
}

}  // namespace twistor
