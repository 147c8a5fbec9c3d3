#include "twistor/rational_curve.hpp"

#include <random>
#include <sstream>

#include "twistor/univariate.hpp"

namespace twistor {

RationalCurveMap::RationalCurveMap(int degree, std::array<HomogPoly, 4> forms) : d(degree), f(std::move(forms)) {
    if (d < 1) throw std::invalid_argument("rational curve degree must be positive");
    for (std::size_t i = 0; i < 4; ++i)
        if (f[i].num_vars() != 2 || f[i].degree() != d)
            throw std::invalid_argument("component f" + std::to_string(i) + " is not a binary form of degree " +
                                        std::to_string(d));
}

PolyMatrix RationalCurveMap::jacobian() const {
    PolyMatrix j(4, 2, 2, d - 1);
    for (int i = 0; i < 4; ++i) {
        j(i, 0) = f[i].derivative(0);
        j(i, 1) = f[i].derivative(1);
    }
    return j;
}

namespace {

HomogPoly binary_monomial(int a, int b) { return HomogPoly::from_terms(2, {{{a, b}, GaussianRational(1)}}); }

RationalCurveMap from_monomials(int d, const std::array<std::pair<int, int>, 4>& exps) {
    std::array<HomogPoly, 4> f;
    for (int i = 0; i < 4; ++i) f[i] = exps[i].first < 0 ? HomogPoly(2, d) : binary_monomial(exps[i].first, exps[i].second);
    return {d, f};
}

std::string describe_common_zero(const BinaryFormGcd& g) {
    if (g.all_zero) return "all forms vanish identically";
    if (g.common_zero_at_infinity) return "[0:1]";
    if (g.finite.degree() == 1) return "[1:" + (-g.finite.coeffs()[0]).to_string() + "]";
    std::ostringstream os;
    os.precision(12);
    const auto root = g.finite.numeric_roots().front();
    os << "[1:" << root.real() << (root.imag() < 0 ? "-" : "+") << std::abs(root.imag()) << "i] (gcd of degree "
       << g.finite.degree() << ")";
    return os.str();
}

}  // namespace

RationalCurveMap line_map() { return from_monomials(1, {{{1, 0}, {0, 1}, {-1, 0}, {-1, 0}}}); }
RationalCurveMap conic_map() { return from_monomials(2, {{{2, 0}, {1, 1}, {0, 2}, {-1, 0}}}); }
RationalCurveMap twisted_cubic_map() { return from_monomials(3, {{{3, 0}, {2, 1}, {1, 2}, {0, 3}}}); }

MapValidation validate_map(const RationalCurveMap& f) {
    MapValidation v;
    const BinaryFormGcd base = binary_form_gcd({f.f.begin(), f.f.end()});
    v.base_point_free = base.is_constant();
    if (!v.base_point_free) {
        v.witness = "base point " + describe_common_zero(base);
        return v;
    }
    const PolyMatrix j = f.jacobian();
    std::vector<HomogPoly> minors;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) minors.push_back(j(a, 0) * j(b, 1) - j(b, 0) * j(a, 1));
    const BinaryFormGcd ram = binary_form_gcd(minors);
    v.immersion = ram.is_constant();
    if (!v.immersion) v.witness = "Jacobian rank drops at " + describe_common_zero(ram);
    return v;
}

std::size_t dual_normal_sections(const RationalCurveMap& f, int m) {
    const std::size_t source = 4 * monomial_count(2, m - f.d);
    if (source == 0) return 0;
    const GradedMap map = graded_matrix(f.jacobian().transpose(), m - f.d, 2);
    if (map.matrix.rows() == 0) return source;
    return source - rank(map.matrix);
}

std::size_t normal_sections_primal(const RationalCurveMap& f, int m) {
    if (m < 0) throw std::invalid_argument("normal_sections_primal needs m >= 0");
    const GradedMap map = graded_matrix(f.jacobian(), 1 + m, 2);
    return map.matrix.rows() - rank(map.matrix);
}

SplittingType normal_splitting_type(const RationalCurveMap& f) {
    const MapValidation v = validate_map(f);
    if (!v.valid()) throw std::invalid_argument("normal_splitting_type: invalid map, " + v.witness);
    const int total = 4 * f.d - 2;
    int a = -1;
    for (int m = 0; m <= total / 2 + 1 && a < 0; ++m)
        if (dual_normal_sections(f, m) > 0) a = m;
    if (a < 0) throw SplittingProfileError("no dual sections up to degree " + std::to_string(total / 2 + 1));
    const SplittingType s{a, total - a};
    for (int m = 0; m <= s.b + 2; ++m) {
        const std::size_t expected = std::max(m - s.a + 1, 0) + std::max(m - s.b + 1, 0);
        const std::size_t actual = dual_normal_sections(f, m);
        if (actual != expected)
            throw SplittingProfileError("h0(N^dual(" + std::to_string(m) + ")) = " + std::to_string(actual) +
                                        ", split model O(" + std::to_string(s.a) + ")+O(" + std::to_string(s.b) +
                                        ") predicts " + std::to_string(expected));
    }
    return s;
}

bool stability_check(const RationalCurveMap& f) {
    const SplittingType s = normal_splitting_type(f);
    return s.a == 2 * f.d - 1 && s.b == 2 * f.d - 1;
}

RationalCurveMap random_rational_curve(int d, std::uint64_t seed, int max_attempts) {
    if (d < 1) throw std::invalid_argument("random_rational_curve needs d >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::array<HomogPoly, 4> f;
        for (auto& p : f) {
            p = HomogPoly(2, d);
            for (std::size_t k = 0; k < p.size(); ++k) p.coeff(k) = coeff(rng);
        }
        RationalCurveMap map(d, f);
        if (validate_map(map).valid()) return map;
    }
    throw std::runtime_error("random_rational_curve: no valid map of degree " + std::to_string(d) + " after " +
                             std::to_string(max_attempts) + " attempts");
}

}  // namespace twistor
