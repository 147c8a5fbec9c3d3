#include "twistor/poly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace twistor {

namespace {

mpz_class binomial(long n, long k) {
    if (k < 0 || n < k) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

void enumerate(int num_vars, int remaining, int var, Exponent& current, std::vector<Exponent>& out) {
    if (var == num_vars - 1) {
        current[var] = remaining;
        out.push_back(current);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        current[var] = e;
        enumerate(num_vars, remaining - e, var + 1, current, out);
    }
}

const std::vector<Exponent>& cached_basis(int num_vars, int degree) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<Exponent>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find({num_vars, degree});
    if (it == cache.end()) it = cache.emplace(std::pair{num_vars, degree}, monomial_basis(num_vars, degree)).first;
    return it->second;
}

}  // namespace

std::size_t monomial_count(int num_vars, int degree) {
    if (num_vars < 1) throw std::invalid_argument("monomial_count needs num_vars >= 1");
    if (degree < 0) return 0;
    return binomial(degree + num_vars - 1, num_vars - 1).get_ui();
}

std::vector<Exponent> monomial_basis(int num_vars, int degree) {
    if (num_vars < 1) throw std::invalid_argument("monomial_basis needs num_vars >= 1");
    std::vector<Exponent> out;
    if (degree < 0) return out;
    out.reserve(monomial_count(num_vars, degree));
    Exponent current(num_vars, 0);
    enumerate(num_vars, degree, 0, current, out);
    return out;
}

std::size_t monomial_index(const Exponent& e) {
    const int n = static_cast<int>(e.size());
    int rem = 0;
    for (int x : e) rem += x;
    std::size_t index = 0;
    // exponent vectors sharing the prefix but with a larger entry at position i
    // come first; there are C(rem - e_i - 1 + m, m) of them, m = n - i - 1
    for (int i = 0; i + 1 < n; ++i) {
        const int m = n - i - 1;
        if (rem - e[i] - 1 >= 0) index += binomial(rem - e[i] - 1 + m, m).get_ui();
        rem -= e[i];
    }
    return index;
}

HomogPoly::HomogPoly(int num_vars, int degree)
    : num_vars_(num_vars), degree_(degree), coeffs_(monomial_count(num_vars, degree)) {
    if (degree < 0) throw std::invalid_argument("homogeneous polynomial of negative degree");
}

HomogPoly HomogPoly::from_terms(int num_vars, const std::vector<std::pair<Exponent, GaussianRational>>& terms) {
    if (terms.empty()) return HomogPoly(num_vars, 0);
    int degree = -1;
    for (const auto& [e, c] : terms) {
        if (static_cast<int>(e.size()) != num_vars) throw std::invalid_argument("exponent length mismatch");
        int d = 0;
        for (int x : e) {
            if (x < 0) throw std::invalid_argument("negative exponent");
            d += x;
        }
        if (degree < 0) degree = d;
        if (d != degree) throw std::invalid_argument("inhomogeneous polynomial: term degrees " + std::to_string(degree) +
                                                     " and " + std::to_string(d));
    }
    HomogPoly p(num_vars, degree);
    for (const auto& [e, c] : terms) p.coeffs_[monomial_index(e)] += c;
    return p;
}

HomogPoly HomogPoly::variable(int num_vars, int index) {
    Exponent e(num_vars, 0);
    e.at(index) = 1;
    HomogPoly p(num_vars, 1);
    p.coeffs_[monomial_index(e)] = 1;
    return p;
}

HomogPoly HomogPoly::constant(int num_vars, const GaussianRational& c) {
    HomogPoly p(num_vars, 0);
    p.coeffs_[0] = c;
    return p;
}

bool HomogPoly::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

HomogPoly& HomogPoly::operator+=(const HomogPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && (degree_ != o.degree_ || num_vars_ != o.num_vars_)) return *this = o;
    if (num_vars_ != o.num_vars_ || degree_ != o.degree_)
        throw std::invalid_argument("adding polynomials of different degree");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& o) {
    return *this += GaussianRational(-1) * o;
}

HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
    if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("multiplying polynomials in different rings");
    HomogPoly p(a.num_vars_, a.degree_ + b.degree_);
    const auto& ea = cached_basis(a.num_vars_, a.degree_);
    const auto& eb = cached_basis(b.num_vars_, b.degree_);
    Exponent e(a.num_vars_);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            for (int v = 0; v < a.num_vars_; ++v) e[v] = ea[i][v] + eb[j][v];
            p.coeffs_[monomial_index(e)] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return p;
}

HomogPoly operator*(const GaussianRational& s, HomogPoly p) {
    for (auto& c : p.coeffs_) c *= s;
    return p;
}

HomogPoly HomogPoly::conj() const {
    HomogPoly p(*this);
    for (auto& c : p.coeffs_) c = c.conj();
    return p;
}

HomogPoly HomogPoly::derivative(int var) const {
    if (degree_ == 0) return HomogPoly(num_vars_, 0);
    HomogPoly d(num_vars_, degree_ - 1);
    const auto& basis = cached_basis(num_vars_, degree_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero() || basis[k][var] == 0) continue;
        Exponent e = basis[k];
        const long power = e[var]--;
        d.coeffs_[monomial_index(e)] += GaussianRational(power) * coeffs_[k];
    }
    return d;
}

GaussianRational HomogPoly::evaluate(const std::vector<GaussianRational>& x) const {
    if (static_cast<int>(x.size()) != num_vars_) throw std::invalid_argument("evaluation point has wrong length");
    const auto& basis = cached_basis(num_vars_, degree_);
    GaussianRational sum;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        GaussianRational term = coeffs_[k];
        for (int v = 0; v < num_vars_; ++v)
            for (int p = 0; p < basis[k][v]; ++p) term *= x[v];
        sum += term;
    }
    return sum;
}

std::complex<double> HomogPoly::evaluate(const std::vector<std::complex<double>>& x) const {
    if (static_cast<int>(x.size()) != num_vars_) throw std::invalid_argument("evaluation point has wrong length");
    const auto& basis = cached_basis(num_vars_, degree_);
    std::complex<double> sum = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        std::complex<double> term = coeffs_[k].to_complex();
        for (int v = 0; v < num_vars_; ++v)
            for (int p = 0; p < basis[k][v]; ++p) term *= x[v];
        sum += term;
    }
    return sum;
}

std::string HomogPoly::to_string() const {
    const auto& basis = cached_basis(num_vars_, degree_);
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs_[k] << ")";
        for (int v = 0; v < num_vars_; ++v) {
            if (basis[k][v] == 0) continue;
            os << "*x" << (v + 1);
            if (basis[k][v] > 1) os << "^" << basis[k][v];
        }
    }
    return first ? "0" : os.str();
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, int num_vars, int degree)
    : rows_(rows), cols_(cols), num_vars_(num_vars), data_(rows * cols, HomogPoly(num_vars, degree)) {}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.num_vars_ = num_vars_;
    t.data_.resize(data_.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_ || a.num_vars_ != b.num_vars_) throw std::invalid_argument("polynomial matrix shape mismatch");
    PolyMatrix p;
    p.rows_ = a.rows_;
    p.cols_ = b.cols_;
    p.num_vars_ = a.num_vars_;
    p.data_.assign(p.rows_ * p.cols_, HomogPoly(a.num_vars_, 0));
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) {
            HomogPoly acc(a.num_vars_, 0);
            for (std::size_t k = 0; k < a.cols_; ++k) acc += a(r, k) * b(k, c);
            p(r, c) = std::move(acc);
        }
    return p;
}

PolyMatrix PolyMatrix::linear(const std::vector<ExactMatrix>& coefficients) {
    if (coefficients.empty()) throw std::invalid_argument("linear matrix needs at least one coefficient matrix");
    const int n = static_cast<int>(coefficients.size());
    const std::size_t rows = coefficients[0].rows();
    const std::size_t cols = coefficients[0].cols();
    PolyMatrix m(rows, cols, n, 1);
    for (int k = 0; k < n; ++k) {
        if (coefficients[k].rows() != rows || coefficients[k].cols() != cols)
            throw std::invalid_argument("linear matrix coefficient shape mismatch");
        Exponent e(n, 0);
        e[k] = 1;
        const std::size_t idx = monomial_index(e);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c).coeff(idx) = coefficients[k](r, c);
    }
    return m;
}

namespace {

HomogPoly subset_determinant(const PolyMatrix& m, const std::vector<std::size_t>& row_ids) {
    const std::size_t n = row_ids.size();
    if (n == 0) return HomogPoly::constant(m.num_vars(), 1);
    // dp[S]: determinant of rows row_ids[0..|S|) against column set S
    std::vector<HomogPoly> dp(std::size_t{1} << n);
    std::vector<bool> done(dp.size(), false);
    dp[0] = HomogPoly::constant(m.num_vars(), 1);
    done[0] = true;
    for (std::size_t s = 1; s < dp.size(); ++s) {
        const int k = __builtin_popcountll(s);
        const std::size_t row = row_ids[k - 1];
        HomogPoly acc;
        bool have = false;
        int greater = 0;
        for (std::size_t c = n; c-- > 0;) {
            if (!(s & (std::size_t{1} << c))) continue;
            const HomogPoly& entry = m(row, c);
            const HomogPoly& rest = dp[s & ~(std::size_t{1} << c)];
            if (!entry.is_zero() && !rest.is_zero()) {
                HomogPoly term = entry * rest;
                if (greater % 2) term = GaussianRational(-1) * term;
                if (have) {
                    acc += term;
                } else {
                    acc = std::move(term);
                    have = true;
                }
            }
            ++greater;
        }
        if (!have) {
            // zero of the right degree: sum of entry degrees along any diagonal
            int deg = 0;
            for (int r = 0; r < k; ++r) deg += m(row_ids[r], 0).degree();
            acc = HomogPoly(m.num_vars(), deg);
        }
        dp[s] = std::move(acc);
    }
    return dp.back();
}

}  // namespace

HomogPoly determinant(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square polynomial matrix");
    std::vector<std::size_t> rows(m.rows());
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
    return subset_determinant(m, rows);
}

std::vector<HomogPoly> maximal_minors(const PolyMatrix& m) {
    if (m.rows() != m.cols() + 1) throw std::invalid_argument("maximal_minors expects an (n+1) x n matrix");
    std::vector<HomogPoly> minors;
    minors.reserve(m.rows());
    for (std::size_t j = 0; j < m.rows(); ++j) {
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != j) rows.push_back(r);
        HomogPoly d = subset_determinant(m, rows);
        if (j % 2) d = GaussianRational(-1) * d;
        minors.push_back(std::move(d));
    }
    return minors;
}

GradedMap graded_matrix(const PolyMatrix& phi, int source_degree, int num_vars) {
    if (phi.num_vars() != num_vars) throw std::invalid_argument("graded_matrix: ring mismatch");
    int entry_degree = -1;
    for (std::size_t r = 0; r < phi.rows(); ++r)
        for (std::size_t c = 0; c < phi.cols(); ++c) {
            const HomogPoly& p = phi(r, c);
            if (p.is_zero()) continue;
            if (entry_degree < 0) entry_degree = p.degree();
            if (p.degree() != entry_degree)
                throw std::invalid_argument("graded_matrix: entry (" + std::to_string(r) + "," + std::to_string(c) +
                                            ") has degree " + std::to_string(p.degree()) + ", expected " +
                                            std::to_string(entry_degree));
        }
    if (entry_degree < 0) entry_degree = phi.rows() && phi.cols() ? phi(0, 0).degree() : 0;

    GradedMap g;
    g.num_vars = num_vars;
    g.source_degree = source_degree;
    g.target_degree = source_degree + entry_degree;
    g.source_multiplicity = phi.cols();
    g.target_multiplicity = phi.rows();
    const std::size_t ns = monomial_count(num_vars, source_degree);
    const std::size_t nt = monomial_count(num_vars, g.target_degree);
    g.matrix = ExactMatrix(phi.rows() * nt, phi.cols() * ns);
    if (ns == 0 || nt == 0) return g;

    const auto& src = cached_basis(num_vars, source_degree);
    const auto& ent = cached_basis(num_vars, entry_degree);
    Exponent e(num_vars);
    for (std::size_t r = 0; r < phi.rows(); ++r)
        for (std::size_t c = 0; c < phi.cols(); ++c) {
            const HomogPoly& p = phi(r, c);
            if (p.is_zero()) continue;
            for (std::size_t k = 0; k < p.size(); ++k) {
                if (p.coeff(k).is_zero()) continue;
                for (std::size_t s = 0; s < ns; ++s) {
                    for (int v = 0; v < num_vars; ++v) e[v] = ent[k][v] + src[s][v];
                    g.matrix(r * nt + monomial_index(e), c * ns + s) += p.coeff(k);
                }
            }
        }
    return g;
}

ExactMatrix ideal_piece(const std::vector<HomogPoly>& gens, int degree) {
    if (gens.empty()) return ExactMatrix(0, 0);
    const int n = gens[0].num_vars();
    const std::size_t cols = monomial_count(n, degree);
    std::size_t rows = 0;
    for (const auto& g : gens)
        if (!g.is_zero() && g.degree() <= degree) rows += monomial_count(n, degree - g.degree());
    ExactMatrix m(rows, cols);
    std::size_t row = 0;
    Exponent e(n);
    for (const auto& g : gens) {
        if (g.is_zero() || g.degree() > degree) continue;
        const auto& shifts = cached_basis(n, degree - g.degree());
        const auto& ge = cached_basis(n, g.degree());
        for (const auto& s : shifts) {
            for (std::size_t k = 0; k < g.size(); ++k) {
                if (g.coeff(k).is_zero()) continue;
                for (int v = 0; v < n; ++v) e[v] = ge[k][v] + s[v];
                m(row, monomial_index(e)) = g.coeff(k);
            }
            ++row;
        }
    }
    return m;
}

std::size_t ideal_piece_dimension(const std::vector<HomogPoly>& gens, int degree) {
    if (degree < 0) return 0;
    return rank(ideal_piece(gens, degree));
}

QuotientPiece::QuotientPiece(const std::vector<HomogPoly>& gens, int num_vars, int degree)
    : num_vars_(num_vars), degree_(degree) {
    const std::size_t n = monomial_count(num_vars, degree);
    ExactMatrix piece = ideal_piece(gens, degree);
    if (piece.rows() == 0) piece = ExactMatrix(0, n);
    ideal_ = row_echelon(piece);
    std::vector<bool> pivot(n, false);
    for (auto p : ideal_.pivots) pivot[p] = true;
    basis_position_.assign(n, -1);
    for (std::size_t k = 0; k < n; ++k)
        if (!pivot[k]) {
            basis_position_[k] = static_cast<long>(basis_.size());
            basis_.push_back(k);
        }
}

std::vector<GaussianRational> QuotientPiece::normal_form(const HomogPoly& p) const {
    std::vector<GaussianRational> out(basis_.size());
    if (p.is_zero()) return out;
    if (p.degree() != degree_ || p.num_vars() != num_vars_)
        throw std::invalid_argument("normal_form: polynomial not in this graded piece");
    std::vector<GaussianRational> v = p.coeffs();
    for (std::size_t i = 0; i < ideal_.pivots.size(); ++i) {
        const GaussianRational f = v[ideal_.pivots[i]];
        if (f.is_zero()) continue;
        for (std::size_t c = ideal_.pivots[i]; c < v.size(); ++c) {
            const auto& x = ideal_.reduced(i, c);
            if (!x.is_zero()) v[c] -= f * x;
        }
    }
    for (std::size_t k = 0; k < basis_.size(); ++k) out[k] = v[basis_[k]];
    return out;
}

}  // namespace twistor
