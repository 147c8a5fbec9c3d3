#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twistor/matrix.hpp"

namespace twistor {

using Exponent = std::vector<int>;

/// Number of monomials of `degree` in `num_vars` variables; 0 for degree < 0.
std::size_t monomial_count(int num_vars, int degree);

/// All exponent vectors of total `degree`, in descending lexicographic order
/// (x1^degree first). Empty for degree < 0. Requires num_vars >= 1.
std::vector<Exponent> monomial_basis(int num_vars, int degree);

/// Position of `e` in monomial_basis(e.size(), |e|).
std::size_t monomial_index(const Exponent& e);

/// Homogeneous polynomial with exact coefficients, stored densely against
/// monomial_basis(num_vars, degree).
class HomogPoly {
public:
    HomogPoly() = default;
    HomogPoly(int num_vars, int degree);

    /// Builds from (exponent, coefficient) terms; every exponent must have the
    /// same total degree. Throws std::invalid_argument otherwise.
    static HomogPoly from_terms(int num_vars, const std::vector<std::pair<Exponent, GaussianRational>>& terms);
    static HomogPoly variable(int num_vars, int index);
    static HomogPoly constant(int num_vars, const GaussianRational& c);

    int num_vars() const { return num_vars_; }
    int degree() const { return degree_; }
    std::size_t size() const { return coeffs_.size(); }

    const GaussianRational& coeff(std::size_t k) const { return coeffs_[k]; }
    GaussianRational& coeff(std::size_t k) { return coeffs_[k]; }
    const GaussianRational& coeff(const Exponent& e) const { return coeffs_[monomial_index(e)]; }
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }

    bool is_zero() const;

    HomogPoly& operator+=(const HomogPoly& o);
    HomogPoly& operator-=(const HomogPoly& o);
    friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
    friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
    friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b);
    friend HomogPoly operator*(const GaussianRational& s, HomogPoly p);
    friend bool operator==(const HomogPoly& a, const HomogPoly& b) {
        return a.num_vars_ == b.num_vars_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

    /// Coefficientwise conjugate.
    HomogPoly conj() const;
    /// Partial derivative in variable `var`; degree drops by one.
    HomogPoly derivative(int var) const;

    GaussianRational evaluate(const std::vector<GaussianRational>& x) const;
    std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const;

    /// e.g. "2*x1^2 - i*x2*x3"
    std::string to_string() const;

private:
    int num_vars_ = 0;
    int degree_ = 0;
    std::vector<GaussianRational> coeffs_;
};

/// Matrix whose entries are homogeneous polynomials.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, int num_vars, int degree);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int num_vars() const { return num_vars_; }

    HomogPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const HomogPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    PolyMatrix transpose() const;
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

    /// Linear-form matrix sum_k coefficients[k] * x_k (all of equal shape).
    static PolyMatrix linear(const std::vector<ExactMatrix>& coefficients);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    int num_vars_ = 0;
    std::vector<HomogPoly> data_;
};

/// Determinant of a square polynomial matrix (subset expansion).
HomogPoly determinant(const PolyMatrix& m);

/// For an (n+1) x n matrix: minor j is (-1)^j det(m with row j deleted).
std::vector<HomogPoly> maximal_minors(const PolyMatrix& m);

/// Linear map on graded pieces induced by a polynomial matrix.
struct GradedMap {
    int num_vars = 0;
    int source_degree = 0;
    int target_degree = 0;
    std::size_t source_multiplicity = 0;
    std::size_t target_multiplicity = 0;
    /// (target_multiplicity * #mon(target)) x (source_multiplicity * #mon(source));
    /// coordinates are blocked by component, then monomial_basis order.
    ExactMatrix matrix;
};

/// v -> phi * v from S_{source_degree}^{cols} to S_{source_degree+e}^{rows},
/// where e is the common entry degree. Zero entries are compatible with any
/// degree; a nonzero entry of a different degree throws std::invalid_argument
/// naming its position.
GradedMap graded_matrix(const PolyMatrix& phi, int source_degree, int num_vars);

/// Coefficient matrix (one row per monomial multiple) spanning the degree-k
/// piece of the ideal generated by `gens`.
ExactMatrix ideal_piece(const std::vector<HomogPoly>& gens, int degree);

/// Dimension of the degree-k piece of the ideal generated by `gens`.
std::size_t ideal_piece_dimension(const std::vector<HomogPoly>& gens, int degree);

/// Degree-k piece of S / I with a fixed complement basis: the monomials that
/// are not pivots of the reduced echelon form of I_k.
class QuotientPiece {
public:
    QuotientPiece(const std::vector<HomogPoly>& gens, int num_vars, int degree);

    int degree() const { return degree_; }
    std::size_t dimension() const { return basis_.size(); }
    /// Indices (into monomial_basis) of the complement monomials.
    const std::vector<std::size_t>& basis() const { return basis_; }

    /// Coordinates of the class of p in the complement basis.
    std::vector<GaussianRational> normal_form(const HomogPoly& p) const;

private:
    int num_vars_;
    int degree_;
    RowEchelon ideal_;
    std::vector<std::size_t> basis_;
    std::vector<long> basis_position_;  // monomial index -> position in basis_, or -1
};

}  // namespace twistor
