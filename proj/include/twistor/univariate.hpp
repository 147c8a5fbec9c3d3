#pragma once

#include <complex>
#include <vector>

#include "twistor/gaussian.hpp"
#include "twistor/poly.hpp"

namespace twistor {

/// Dense univariate polynomial over Q(i); coefficient k multiplies x^k.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<GaussianRational> coeffs);

    /// Dehomogenize a binary form in (x1, x2) at x1 = 1, so x = x2 / x1.
    static UniPoly from_binary_form(const HomogPoly& form);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    const GaussianRational& leading() const { return coeffs_.back(); }

    UniPoly monic() const;
    GaussianRational evaluate(const GaussianRational& x) const;

    /// Numerical roots (companion matrix eigenvalues).
    std::vector<std::complex<double>> numeric_roots() const;

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();
    std::vector<GaussianRational> coeffs_;
};

/// Remainder of a by b (b nonzero).
UniPoly remainder(const UniPoly& a, const UniPoly& b);

/// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Monic gcd of a list.
UniPoly gcd(const std::vector<UniPoly>& polys);

/// Common zeros of binary forms on P^1 (two variables), as the gcd of their
/// dehomogenizations plus a flag for the point [0:1] (x1 = 0).
struct BinaryFormGcd {
    UniPoly finite;          ///< monic gcd in x = x2/x1; constant 1 when no finite common zero
    bool common_zero_at_infinity = false;
    bool all_zero = false;
    bool is_constant() const { return !all_zero && !common_zero_at_infinity && finite.degree() == 0; }
};

BinaryFormGcd binary_form_gcd(const std::vector<HomogPoly>& forms);

}  // namespace twistor
