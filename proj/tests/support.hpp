#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "twistor/matrix.hpp"
#include "twistor/poly.hpp"

namespace testing_support {

using twistor::ExactMatrix;
using twistor::GaussianRational;

inline GaussianRational random_gaussian(std::mt19937_64& rng, int bound = 3) {
    std::uniform_int_distribution<int> d(-bound, bound);
    return {mpq_class(d(rng)), mpq_class(d(rng))};
}

inline ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound = 3) {
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = random_gaussian(rng, bound);
    return m;
}

inline ExactMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        ExactMatrix m = random_matrix(rng, n, n, 2);
        if (twistor::rank(m) == n) return m;
    }
}

// Leibniz expansion over permutations; only for small n.
inline GaussianRational leibniz_det(const ExactMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    GaussianRational total;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k) inversions += perm[i] > perm[k];
        GaussianRational term(1);
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        total += inversions % 2 ? -term : term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Largest k with a nonzero k x k minor.
inline std::size_t minor_rank(const ExactMatrix& m) {
    const std::size_t top = std::min(m.rows(), m.cols());
    for (std::size_t k = top; k > 0; --k) {
        std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
        std::fill(rsel.end() - k, rsel.end(), true);
        do {
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.end() - k, csel.end(), true);
            do {
                ExactMatrix sub(k, k);
                std::size_t a = 0;
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    if (!rsel[i]) continue;
                    std::size_t b = 0;
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        if (csel[j]) sub(a, b++) = m(i, j);
                    ++a;
                }
                if (!leibniz_det(sub).is_zero()) return k;
            } while (std::next_permutation(csel.begin(), csel.end()));
        } while (std::next_permutation(rsel.begin(), rsel.end()));
    }
    return 0;
}

inline twistor::HomogPoly random_form(std::mt19937_64& rng, int num_vars, int degree, int bound = 3) {
    twistor::HomogPoly p(num_vars, degree);
    for (std::size_t k = 0; k < p.size(); ++k) p.coeff(k) = random_gaussian(rng, bound);
    return p;
}

inline twistor::PolyMatrix random_poly_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int num_vars,
                                              int degree) {
    twistor::PolyMatrix m(rows, cols, num_vars, degree);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = random_form(rng, num_vars, degree, 2);
    return m;
}

}  // namespace testing_support
