#include "twistor/cohomology.hpp"

#include <stdexcept>

namespace twistor {

namespace {

void require_certified(const AcmCurve& c, const char* what) {
    if (!c.certified()) throw std::invalid_argument(std::string(what) + ": curve is not certified");
}

long h0_P3(int m) { return static_cast<long>(monomial_count(4, m)); }

}  // namespace

CohomologyDims line_bundle_cohomology_P3(int m) {
    return {monomial_count(4, m), 0, 0, monomial_count(4, -m - 4)};
}

CohomologyDims ideal_cohomology(const AcmCurve& c, int k) {
    require_certified(c, "ideal_cohomology");
    const int r = c.r();
    CohomologyDims h{};
    h[0] = predicted_ideal_dimension(r, k);
    h[1] = 0;

    const int source_degree = r - k - 4;
    const std::size_t source = (r + 1) * monomial_count(4, source_degree);
    const std::size_t target = r * monomial_count(4, source_degree + 1);
    std::size_t rk = 0;
    if (source > 0 && target > 0) rk = rank(graded_matrix(c.matrix.forms().transpose(), source_degree, 4).matrix);
    h[2] = target - rk;
    h[3] = source - rk;
    return h;
}

long euler_characteristic_ideal(const AcmCurve& c, int k) {
    // chi(O(k)) is the Hilbert polynomial of P^3, valid for every k
    const long chi_O = static_cast<long>(k + 3) * (k + 2) * (k + 1) / 6;
    return chi_O - (static_cast<long>(c.d) * k + 1 - c.g);
}

bool ellia_stability_check(const AcmCurve& c) {
    require_certified(c, "ellia_stability_check");
    for (int k : {c.r() - 1, c.r() - 2})
        if (ideal_cohomology(c, k) != CohomologyDims{0, 0, 0, 0}) return false;
    return true;
}

std::size_t normal_sections(const AcmCurve& c, int twist) {
    require_certified(c, "normal_sections");
    const int r = c.r();
    const int a = r + twist;
    if (a < 0) return 0;
    // s in S_a^(r+1) gives a section iff phi^T s lies in I_{a+1}^r. With A the
    // graded phi^T and B spanning I_{a+1}^r, the preimage has dimension
    // dim S_a^(r+1) + rank B - rank [A | B]; sections are the preimage modulo I_a^(r+1).
    const ExactMatrix A = graded_matrix(c.matrix.forms().transpose(), a, 4).matrix;
    const ExactMatrix piece = ideal_piece(c.minors, a + 1).transpose();
    const std::size_t nt = piece.rows();
    ExactMatrix B(r * nt, r * piece.cols());
    for (int i = 0; i < r; ++i)
        for (std::size_t row = 0; row < nt; ++row)
            for (std::size_t col = 0; col < piece.cols(); ++col)
                if (!piece(row, col).is_zero()) B(i * nt + row, i * piece.cols() + col) = piece(row, col);
    const std::size_t preimage = A.cols() + r * rank(piece) - rank(hstack(A, B));
    return preimage - (r + 1) * ideal_piece_dimension(c.minors, a);
}

CohomologyTable cohomology_table(const AcmCurve& c, int k_min, int k_max) {
    require_certified(c, "cohomology_table");
    CohomologyTable table;
    for (int k = k_min; k <= k_max; ++k) {
        CohomologyRow row;
        row.k = k;
        row.ideal = ideal_cohomology(c, k);
        row.h0_OC = k < 0 ? 0 : static_cast<std::size_t>(h0_P3(k)) - row.ideal[0];
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace twistor
