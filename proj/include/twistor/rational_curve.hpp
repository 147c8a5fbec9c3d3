#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistor/poly.hpp"

namespace twistor {

/// [s:t] -> [f0 : f1 : f2 : f3] with binary forms of degree d.
struct RationalCurveMap {
    int d = 0;
    std::array<HomogPoly, 4> f;

    RationalCurveMap() = default;
    RationalCurveMap(int degree, std::array<HomogPoly, 4> forms);

    /// 4 x 2 matrix [df/ds, df/dt].
    PolyMatrix jacobian() const;
};

RationalCurveMap line_map();
RationalCurveMap conic_map();
RationalCurveMap twisted_cubic_map();

struct MapValidation {
    bool base_point_free = false;
    bool immersion = false;
    /// Common zero [s:t] of the forms or of the Jacobian minors, or a description of the gcd.
    std::string witness;
    bool valid() const { return base_point_free && immersion; }
};

MapValidation validate_map(const RationalCurveMap& f);

/// N = O(a) + O(b) with a <= b.
struct SplittingType {
    int a = 0;
    int b = 0;
    friend bool operator==(const SplittingType&, const SplittingType&) = default;
    friend auto operator<=>(const SplittingType&, const SplittingType&) = default;
};

class SplittingProfileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// h0(N^dual(m)) = dim ker(J^T : H0(O(m-d))^4 -> H0(O(m-1))^2).
std::size_t dual_normal_sections(const RationalCurveMap& f, int m);

/// h0(N(m)) for m >= 0 from the primal presentation 0 -> O(1+m)^2 -> O(d+m)^4 -> N(m) -> 0.
std::size_t normal_sections_primal(const RationalCurveMap& f, int m);

/// a is the first m with h0(N^dual(m)) > 0 and b = 4d - 2 - a. The whole profile
/// up to m = b + 2 is compared with the split model before returning.
/// Throws std::invalid_argument for an invalid map and SplittingProfileError
/// if the profile is inconsistent.
SplittingType normal_splitting_type(const RationalCurveMap& f);

/// Balanced splitting (2d-1, 2d-1), i.e. H*(N(-2d)) = 0.
bool stability_check(const RationalCurveMap& f);

/// Uniform integer coefficients in [-3, 3], resampled until validate_map passes.
/// Throws std::runtime_error after max_attempts.
RationalCurveMap random_rational_curve(int d, std::uint64_t seed, int max_attempts = 200);

}  // namespace twistor
