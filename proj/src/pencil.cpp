#include "twistor/pencil.hpp"

#include <sstream>

#include "twistor/poly.hpp"
#include "twistor/univariate.hpp"

namespace twistor {

Pencil::Pencil(ExactMatrix a1, ExactMatrix a2) : A1(std::move(a1)), A2(std::move(a2)) {
    r = static_cast<int>(A1.cols());
    if (r < 1 || A1.rows() != A1.cols() + 1 || A2.rows() != A1.rows() || A2.cols() != A1.cols())
        throw std::invalid_argument("pencil matrices must both be (r+1) x r");
}

CanonicalPair CanonicalPair::of(int r) {
    if (r < 1) throw std::invalid_argument("canonical pair needs r >= 1");
    CanonicalPair c{ExactMatrix(r + 1, r), ExactMatrix(r + 1, r)};
    for (int j = 0; j < r; ++j) {
        c.S(j, j) = 1;
        c.T(j + 1, j) = 1;
    }
    return c;
}

namespace {

std::vector<HomogPoly> pencil_minors(const Pencil& p) { return maximal_minors(PolyMatrix::linear({p.A1, p.A2})); }

std::string format_point(const std::complex<double>& lambda) {
    std::ostringstream os;
    os.precision(12);
    os << "[1:" << lambda.real() << (lambda.imag() < 0 ? "-" : "+") << std::abs(lambda.imag()) << "i]";
    return os.str();
}

}  // namespace

std::optional<std::string> rank_drop_witness(const Pencil& p) {
    if (rank(p.A2) < static_cast<std::size_t>(p.r)) return std::string("[0:1]");
    std::vector<UniPoly> polys;
    for (const auto& m : pencil_minors(p)) polys.push_back(UniPoly::from_binary_form(m));
    UniPoly g = gcd(polys);
    if (g.is_zero()) return std::string("[1:0]");
    if (g.degree() == 0) return std::nullopt;
    if (g.degree() == 1) return "[1:" + (-g.coeffs()[0]).to_string() + "]";
    std::ostringstream os;
    os << format_point(g.numeric_roots().front()) << " (root of the minor gcd, degree " << g.degree() << ")";
    return os.str();
}

bool is_injective_pencil(const Pencil& p) { return !rank_drop_witness(p).has_value(); }

KroneckerReduction kronecker_reduce(const Pencil& p) {
    if (auto w = rank_drop_witness(p)) throw NonInjectivePencil(*w);
    const int r = p.r;
    // The signed maximal minors w(x1, x2) span the left kernel of the pencil and
    // have minimal degree r. For the canonical pencil their x1^(r-k) x2^k
    // coefficient is (-1)^(r-k) e_{r-k}, so row j of P is (-1)^j times the
    // coefficient vector of x1^j x2^(r-j).
    const std::vector<HomogPoly> w = pencil_minors(p);
    KroneckerReduction red;
    red.P = ExactMatrix(r + 1, r + 1);
    for (int j = 0; j <= r; ++j) {
        const std::size_t mono = static_cast<std::size_t>(r - j);  // x1^j x2^(r-j)
        for (int c = 0; c <= r; ++c) {
            GaussianRational v = w[c].coeff(mono);
            red.P(j, c) = (j % 2) ? -v : v;
        }
    }
    const ExactMatrix PA1 = red.P * p.A1;
    red.Q = inverse(PA1.block(0, 0, r, r));
    if (!satisfies_reduction(p, red)) throw std::logic_error("kronecker_reduce: reduction failed verification");
    return red;
}

bool satisfies_reduction(const Pencil& p, const KroneckerReduction& red) {
    const CanonicalPair c = CanonicalPair::of(p.r);
    return red.P * p.A1 * red.Q == c.S && red.P * p.A2 * red.Q == c.T;
}

ExactMatrix stabilizer_system(const CanonicalPair& c) {
    const std::size_t m = c.S.rows();  // r + 1
    const std::size_t n = c.S.cols();  // r
    const std::size_t unknowns = m * m + n * n;
    ExactMatrix sys(2 * m * n, unknowns);
    auto x_index = [&](std::size_t i, std::size_t k) { return i * m + k; };
    auto y_index = [&](std::size_t l, std::size_t j) { return m * m + l * n + j; };
    std::size_t row = 0;
    for (const ExactMatrix* A : {&c.S, &c.T}) {
        // (X A + A Y)_{ij} = sum_k X_ik A_kj + sum_l A_il Y_lj
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j, ++row) {
                for (std::size_t k = 0; k < m; ++k)
                    if (!(*A)(k, j).is_zero()) sys(row, x_index(i, k)) += (*A)(k, j);
                for (std::size_t l = 0; l < n; ++l)
                    if (!(*A)(i, l).is_zero()) sys(row, y_index(l, j)) += (*A)(i, l);
            }
    }
    return sys;
}

std::size_t stabilizer_dimension(const CanonicalPair& c) { return kernel_basis(stabilizer_system(c)).cols(); }

}  // namespace twistor
