#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "twistor/matrix.hpp"

namespace twistor {

/// Pencil A1 x1 + A2 x2 of (r+1) x r matrices.
struct Pencil {
    int r = 0;
    ExactMatrix A1, A2;

    Pencil() = default;
    Pencil(ExactMatrix a1, ExactMatrix a2);
};

/// S has the identity in its top r rows, T the identity in its bottom r rows.
struct CanonicalPair {
    ExactMatrix S, T;
    static CanonicalPair of(int r);
};

/// P (A1 x1 + A2 x2) Q = S x1 + T x2.
struct KroneckerReduction {
    ExactMatrix P, Q;
};

class NonInjectivePencil : public std::runtime_error {
public:
    explicit NonInjectivePencil(std::string witness)
        : std::runtime_error("pencil is not injective; rank drops at " + witness), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// Point [x1:x2] where the rank of A1 x1 + A2 x2 drops below r, if any.
std::optional<std::string> rank_drop_witness(const Pencil& p);

bool is_injective_pencil(const Pencil& p);

/// Throws NonInjectivePencil. The returned pair is checked by coefficient
/// comparison before it is handed back.
KroneckerReduction kronecker_reduce(const Pencil& p);

bool satisfies_reduction(const Pencil& p, const KroneckerReduction& red);

/// Linear system X S + S Y = 0, X T + T Y = 0 in the entries of (X, Y),
/// X row-major first.
ExactMatrix stabilizer_system(const CanonicalPair& c);

std::size_t stabilizer_dimension(const CanonicalPair& c);

}  // namespace twistor
