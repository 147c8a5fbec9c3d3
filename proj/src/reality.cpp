#include "twistor/reality.hpp"

#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace twistor {

std::array<GaussianRational, 4> sigma_point(const std::array<GaussianRational, 4>& x) {
    bool zero = true;
    for (const auto& c : x) zero = zero && c.is_zero();
    if (zero) throw std::invalid_argument("sigma_point: zero vector is not a point of P^3");
    return {-x[1].conj(), x[0].conj(), -x[3].conj(), x[2].conj()};
}

HomogPoly sigma_form(const HomogPoly& f) {
    if (f.num_vars() != 4) throw std::invalid_argument("sigma_form acts on forms in four variables");
    HomogPoly out(4, f.degree());
    const auto basis = monomial_basis(4, f.degree());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (f.coeff(k).is_zero()) continue;
        const Exponent& e = basis[k];
        GaussianRational c = f.coeff(k).conj();
        if ((e[0] + e[2]) % 2) c = -c;
        out.coeff(monomial_index({e[1], e[0], e[3], e[2]})) += c;
    }
    return out;
}

HomogPoly sigma_fiber_form(const HomogPoly& f) {
    if (f.num_vars() != 3) throw std::invalid_argument("sigma_fiber_form acts on forms in three variables");
    HomogPoly out(3, f.degree());
    const auto basis = monomial_basis(3, f.degree());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (f.coeff(k).is_zero()) continue;
        const Exponent& e = basis[k];
        GaussianRational c = f.coeff(k).conj();
        if ((e[0] + e[2]) % 2) c = -c;
        out.coeff(monomial_index({e[1], e[0], e[2]})) += c;
    }
    return out;
}

bool is_sigma_invariant_ideal(const std::vector<HomogPoly>& gens, int degree) {
    std::vector<HomogPoly> span;
    std::vector<HomogPoly> both;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto& g = gens[k];
        if (g.is_zero()) continue;
        if (g.degree() != degree)
            throw std::invalid_argument("is_sigma_invariant_ideal: generator " + std::to_string(k) + " has degree " +
                                        std::to_string(g.degree()) + ", expected " + std::to_string(degree));
        span.push_back(g);
    }
    if (span.empty()) return true;
    both = span;
    for (const auto& g : span) both.push_back(g.num_vars() == 4 ? sigma_form(g) : sigma_fiber_form(g));
    // generators of equal degree: the degree-d piece is just their span
    return rank(ideal_piece(span, degree)) == rank(ideal_piece(both, degree));
}

LinearMatrix sigma_linear_matrix(const LinearMatrix& m) {
    return {m.A2().conj(), GaussianRational(-1) * m.A1().conj(), m.A4().conj(), GaussianRational(-1) * m.A3().conj()};
}

namespace {

// G A_k - A'_k K = 0 with K = H^{-1}; unknowns G (row-major) then K.
ExactMatrix gauge_system(const LinearMatrix& m, const LinearMatrix& target) {
    const std::size_t rows = m.r + 1;
    const std::size_t cols = m.r;
    ExactMatrix sys(4 * rows * cols, rows * rows + cols * cols);
    std::size_t row = 0;
    for (int k = 0; k < 4; ++k) {
        const ExactMatrix& A = m.A[k];
        const ExactMatrix& B = target.A[k];
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j, ++row) {
                for (std::size_t l = 0; l < rows; ++l)
                    if (!A(l, j).is_zero()) sys(row, i * rows + l) += A(l, j);
                for (std::size_t l = 0; l < cols; ++l)
                    if (!B(i, l).is_zero()) sys(row, rows * rows + l * cols + j) -= B(i, l);
            }
    }
    return sys;
}

std::optional<SigmaGauge> gauge_from_vector(const ExactMatrix& kernel, std::size_t col, std::size_t rows,
                                            std::size_t cols) {
    ExactMatrix G(rows, rows), K(cols, cols);
    for (std::size_t i = 0; i < rows * rows; ++i) G(i / rows, i % rows) = kernel(i, col);
    for (std::size_t i = 0; i < cols * cols; ++i) K(i / cols, i % cols) = kernel(rows * rows + i, col);
    if (rank(G) < rows || rank(K) < cols) return std::nullopt;
    return SigmaGauge{G, inverse(K)};
}

}  // namespace

std::optional<SigmaGauge> find_sigma_gauge(const LinearMatrix& m) {
    const ExactMatrix kernel = kernel_basis(gauge_system(m, sigma_linear_matrix(m)));
    if (kernel.cols() == 0) return std::nullopt;
    const std::size_t rows = m.r + 1;
    const std::size_t cols = m.r;
    if (auto g = gauge_from_vector(kernel, 0, rows, cols)) return g;
    // several solutions: try their sum
    ExactMatrix sum(kernel.rows(), 1);
    for (std::size_t c = 0; c < kernel.cols(); ++c) sum += kernel.column(c);
    return gauge_from_vector(sum, 0, rows, cols);
}

const SigmaGauge& canonical_sigma_gauge(int r) {
    static std::mutex mutex;
    static std::map<int, SigmaGauge> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(r); it != cache.end()) return it->second;
    const CanonicalPair c = CanonicalPair::of(r);
    const LinearMatrix st(c.S, c.T, ExactMatrix(r + 1, r), ExactMatrix(r + 1, r));
    auto gauge = find_sigma_gauge(st);
    if (!gauge) throw std::logic_error("canonical pencil has no sigma gauge");
    GaussianRational lead;
    for (std::size_t i = 0; i < gauge->G.rows() && lead.is_zero(); ++i)
        for (std::size_t j = 0; j < gauge->G.cols() && lead.is_zero(); ++j) lead = gauge->G(i, j);
    gauge->G = (GaussianRational(1) / lead) * gauge->G;
    gauge->H = lead * gauge->H;
    return cache.emplace(r, *gauge).first->second;
}

ExactMatrix sigma_partner_A4(const SigmaGauge& gauge, const ExactMatrix& A3) {
    return gauge.G.conj() * A3.conj() * gauge.H.conj();
}

std::pair<ExactMatrix, ExactMatrix> sigma_pair_A34(const ExactMatrix& A3_tilde, const GaussianRational& t) {
    return sigma_pair_A34(canonical_sigma_gauge(static_cast<int>(A3_tilde.cols())), A3_tilde, t);
}

std::pair<ExactMatrix, ExactMatrix> sigma_pair_A34(const SigmaGauge& gauge, const ExactMatrix& A3_tilde,
                                                   const GaussianRational& t) {
    // With A4 = conj(G A3 H) the relation A3 + t A4 = A3~ is real-linear in A3.
    // Since conj(G) G X H conj(H) = -X it has the closed-form solution
    //   A3 = (A3~ - t conj(G) conj(A3~) conj(H)) / (1 + |t|^2).
    const ExactMatrix GG = gauge.G.conj() * gauge.G;
    const ExactMatrix HH = gauge.H * gauge.H.conj();
    const GaussianRational z = GG(0, 0);
    const GaussianRational w = HH(0, 0);
    if (GG != z * ExactMatrix::identity(GG.rows()) || HH != w * ExactMatrix::identity(HH.rows()) || z * w != -1)
        throw std::domain_error("sigma_pair_A34: gauge does not square to -1; system is singular");
    const GaussianRational scale = GaussianRational(1) / GaussianRational(1 + t.norm2());
    ExactMatrix A3 = scale * (A3_tilde - t * sigma_partner_A4(gauge, A3_tilde));
    ExactMatrix A4 = sigma_partner_A4(gauge, A3);
    return {std::move(A3), std::move(A4)};
}

LinearMatrix make_sigma_invariant_pencil(int r, std::uint64_t seed, int max_attempts) {
    if (r < 1) throw std::invalid_argument("make_sigma_invariant_pencil needs r >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-2, 2);
    auto random_entry = [&] { return GaussianRational(coeff(rng), coeff(rng)); };

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::array<ExactMatrix, 4> A;
        for (auto& m : A) m = ExactMatrix(r + 1, r);
        // sigma on the coefficients of one linear form
        auto set_partner = [&](std::size_t i, std::size_t j, std::size_t pi, std::size_t pj) {
            A[0](pi, pj) = A[1](i, j).conj();
            A[1](pi, pj) = -A[0](i, j).conj();
            A[2](pi, pj) = A[3](i, j).conj();
            A[3](pi, pj) = -A[2](i, j).conj();
        };
        if (r % 2) {
            for (int i = 0; i + 1 <= r; i += 2)
                for (int j = 0; j < r; ++j) {
                    for (auto& m : A) m(i, j) = random_entry();
                    set_partner(i, j, i + 1, j);
                }
        } else {
            for (int j = 0; j + 1 < r; j += 2)
                for (int i = 0; i <= r; ++i) {
                    for (auto& m : A) m(i, j) = random_entry();
                    set_partner(i, j, i, j + 1);
                }
        }
        LinearMatrix phi(A[0], A[1], A[2], A[3]);
        if (is_injective_pencil(phi.base_pencil())) return phi;
    }
    throw std::runtime_error("make_sigma_invariant_pencil: no base-avoiding pencil after " +
                             std::to_string(max_attempts) + " attempts");
}

}  // namespace twistor
