#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "twistor/acm_curve.hpp"

namespace twistor {

/// (h0, h1, h2, h3)
using CohomologyDims = std::array<std::size_t, 4>;

/// Cohomology of O(m) on P^3.
CohomologyDims line_bundle_cohomology_P3(int m);

/// Cohomology of I_C(k) from the twisted resolution. h2 and h3 come from the
/// map on H^3 terms, realized through its Serre dual: the transpose of phi
/// acting H^0(O(r-k-4))^(r+1) -> H^0(O(r-k-3))^r.
/// Throws std::invalid_argument for an uncertified curve.
CohomologyDims ideal_cohomology(const AcmCurve& c, int k);

/// chi(I_C(k)) = chi(O(k)) - (d k + 1 - g).
long euler_characteristic_ideal(const AcmCurve& c, int k);

/// I_C(r-1) and I_C(r-2) have no cohomology; this forces H*(N(-2)) = 0.
bool ellia_stability_check(const AcmCurve& c);

/// h0(N(twist)) as the kernel of phi^T on (S/I)_{r+twist}^(r+1) -> (S/I)_{r+1+twist}^r.
std::size_t normal_sections(const AcmCurve& c, int twist);

struct CohomologyRow {
    int k = 0;
    CohomologyDims ideal{};
    std::size_t h0_OC = 0;  ///< h0(O_C(k))
};

struct CohomologyTable {
    std::vector<CohomologyRow> rows;
};

/// Rows for k = k_min .. k_max. h0(O_C(k)) = dim (S/I)_k since h1(I_C(k)) = 0.
CohomologyTable cohomology_table(const AcmCurve& c, int k_min, int k_max);

}  // namespace twistor
