#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "twistor/linear_matrix.hpp"
#include "twistor/poly.hpp"

namespace twistor {

/// The real structure [x1,x2,x3,x4] -> [-conj(x2), conj(x1), -conj(x4), conj(x3)].
/// Throws std::invalid_argument for the zero vector.
std::array<GaussianRational, 4> sigma_point(const std::array<GaussianRational, 4>& x);

/// Induced antilinear action on forms in x1..x4: (sigma* f)(x) = conj(f(sigma x)).
/// On monomials: x^(e1,e2,e3,e4) -> (-1)^(e1+e3) x^(e2,e1,e4,e3), coefficients conjugated.
/// Squares to (-1)^degree.
HomogPoly sigma_form(const HomogPoly& f);

/// The same action written in the coordinates (x1, x2, x3) of a fiber plane
/// x3' = x3 z3, x4' = x3 z4: a form vanishing on the fiber over [z3:z4] is sent
/// to one vanishing on the fiber over [-conj(z4) : conj(z3)].
/// Rule: x^(a,b,c) -> (-1)^(a+c) x^(b,a,c), coefficients conjugated.
HomogPoly sigma_fiber_form(const HomogPoly& f);

/// True iff span(gens) in degree `degree` is stable under sigma_form.
/// Throws std::invalid_argument if a nonzero generator has another degree.
bool is_sigma_invariant_ideal(const std::vector<HomogPoly>& gens, int degree);

/// sigma applied entrywise to A1 x1 + ... + A4 x4:
/// (A1, A2, A3, A4) -> (conj A2, -conj A1, conj A4, -conj A3).
LinearMatrix sigma_linear_matrix(const LinearMatrix& m);

/// (G, H) with sigma*(phi) = G phi H. Determined up to (cG, H/c).
struct SigmaGauge {
    ExactMatrix G, H;
};

/// Solves G A_k = sigma(A)_k H^{-1} for an invertible pair. nullopt when the
/// linear matrix is not sigma-compatible in this sense.
std::optional<SigmaGauge> find_sigma_gauge(const LinearMatrix& m);

/// The gauge of S x1 + T x2; computed once per r and normalized to +-1 entries.
const SigmaGauge& canonical_sigma_gauge(int r);

/// Linearised reality constraint on x3/x4 coefficients: A4 = conj(G) conj(A3) conj(H).
ExactMatrix sigma_partner_A4(const SigmaGauge& gauge, const ExactMatrix& A3);

/// Unique (A3, A4) with A3 + t A4 = A3_tilde and the x3/x4 part sigma-compatible
/// in the canonical gauge. Throws std::domain_error if the system is singular.
std::pair<ExactMatrix, ExactMatrix> sigma_pair_A34(const ExactMatrix& A3_tilde, const GaussianRational& t);
std::pair<ExactMatrix, ExactMatrix> sigma_pair_A34(const SigmaGauge& gauge, const ExactMatrix& A3_tilde,
                                                   const GaussianRational& t);

/// Random sigma-invariant linear matrix with Gaussian-integer entries. Rows are
/// paired for odd r and columns for even r; the (A1, A2) part is resampled until
/// the pencil is injective. Throws std::runtime_error after `max_attempts`.
LinearMatrix make_sigma_invariant_pencil(int r, std::uint64_t seed, int max_attempts = 64);

}  // namespace twistor
