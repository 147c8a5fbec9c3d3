#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "twistor/gaussian.hpp"

namespace twistor {

/// Dense row-major matrix over the Gaussian rationals.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows);

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;

    ExactMatrix transpose() const;
    ExactMatrix conj() const;
    ExactMatrix adjoint() const { return conj().transpose(); }

    ExactMatrix column(std::size_t c) const;
    ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    ExactMatrix& operator+=(const ExactMatrix& o);
    ExactMatrix& operator-=(const ExactMatrix& o);
    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator*(const GaussianRational& s, ExactMatrix m);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

    Eigen::MatrixXcd to_complex() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianRational> data_;
};

/// Reduced row echelon form: `reduced` has `pivots.size()` nonzero rows, each
/// with a 1 in its pivot column and zeros in every other pivot column.
struct RowEchelon {
    ExactMatrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

/// Exact rank via fraction-free elimination over Z[i].
std::size_t rank(const ExactMatrix& m);

RowEchelon row_echelon(const ExactMatrix& m);

/// Columns form a basis of {v : m v = 0}; there are cols - rank of them.
ExactMatrix kernel_basis(const ExactMatrix& m);

/// Throws std::domain_error when m is singular or not square.
ExactMatrix inverse(const ExactMatrix& m);

/// Determinant by fraction-free elimination.
GaussianRational determinant(const ExactMatrix& m);

/// Vertical / horizontal concatenation.
ExactMatrix vstack(const ExactMatrix& top, const ExactMatrix& bottom);
ExactMatrix hstack(const ExactMatrix& left, const ExactMatrix& right);

}  // namespace twistor
