#pragma once

#include <array>

#include "twistor/matrix.hpp"
#include "twistor/pencil.hpp"
#include "twistor/poly.hpp"

namespace twistor {

/// phi(x) = A1 x1 + A2 x2 + A3 x3 + A4 x4 with (r+1) x r coefficient matrices.
struct LinearMatrix {
    int r = 0;
    std::array<ExactMatrix, 4> A;

    LinearMatrix() = default;
    LinearMatrix(ExactMatrix a1, ExactMatrix a2, ExactMatrix a3, ExactMatrix a4);

    const ExactMatrix& A1() const { return A[0]; }
    const ExactMatrix& A2() const { return A[1]; }
    const ExactMatrix& A3() const { return A[2]; }
    const ExactMatrix& A4() const { return A[3]; }

    Pencil base_pencil() const { return {A[0], A[1]}; }

    /// Entries as linear forms in x1..x4.
    PolyMatrix forms() const;

    /// G phi H, coefficientwise.
    LinearMatrix transformed(const ExactMatrix& G, const ExactMatrix& H) const;

    friend bool operator==(const LinearMatrix& a, const LinearMatrix& b) { return a.r == b.r && a.A == b.A; }
};

}  // namespace twistor
