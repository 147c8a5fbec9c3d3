#include "twistor/linear_matrix.hpp"

#include <stdexcept>

namespace twistor {

LinearMatrix::LinearMatrix(ExactMatrix a1, ExactMatrix a2, ExactMatrix a3, ExactMatrix a4)
    : A{std::move(a1), std::move(a2), std::move(a3), std::move(a4)} {
    r = static_cast<int>(A[0].cols());
    for (const auto& m : A)
        if (r < 1 || m.rows() != static_cast<std::size_t>(r + 1) || m.cols() != static_cast<std::size_t>(r))
            throw std::invalid_argument("linear matrix coefficients must all be (r+1) x r");
}

PolyMatrix LinearMatrix::forms() const { return PolyMatrix::linear({A[0], A[1], A[2], A[3]}); }

LinearMatrix LinearMatrix::transformed(const ExactMatrix& G, const ExactMatrix& H) const {
    return {G * A[0] * H, G * A[1] * H, G * A[2] * H, G * A[3] * H};
}

}  // namespace twistor
