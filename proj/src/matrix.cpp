#include "twistor/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace twistor {

namespace {

// Gaussian integer; elimination runs on primitive rows of these.
struct GaussInt {
    mpz_class re, im;
    bool zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

using IntRow = std::vector<GaussInt>;

IntRow to_integer_row(const ExactMatrix& m, std::size_t r, mpz_class& l) {
    l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const auto& z = m(r, c);
        if (sgn(z.real()) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.real().get_den_mpz_t());
        if (sgn(z.imag()) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.imag().get_den_mpz_t());
    }
    IntRow row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const auto& z = m(r, c);
        if (sgn(z.real()) != 0) row[c].re = z.real().get_num() * (l / z.real().get_den());
        if (sgn(z.imag()) != 0) row[c].im = z.imag().get_num() * (l / z.imag().get_den());
    }
    return row;
}

void make_primitive(IntRow& row) {
    mpz_class g = 0;
    for (const auto& x : row) {
        if (sgn(x.re) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.re.get_mpz_t());
        if (sgn(x.im) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.im.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0) return;
    for (auto& x : row) {
        if (sgn(x.re) != 0) mpz_divexact(x.re.get_mpz_t(), x.re.get_mpz_t(), g.get_mpz_t());
        if (sgn(x.im) != 0) mpz_divexact(x.im.get_mpz_t(), x.im.get_mpz_t(), g.get_mpz_t());
    }
}

// Exact division by a Gaussian integer q, passed as (conj(q), |q|^2).
class ExactDivisor {
public:
    explicit ExactDivisor(const GaussInt& q) : real_(sgn(q.im) == 0), qc_{q.re, -q.im}, norm_(q.re * q.re + q.im * q.im) {}

    void apply(GaussInt& x, mpz_class& t1, mpz_class& t2) const {
        if (x.zero()) return;
        if (real_) {
            mpz_divexact(x.re.get_mpz_t(), x.re.get_mpz_t(), qc_.re.get_mpz_t());
            mpz_divexact(x.im.get_mpz_t(), x.im.get_mpz_t(), qc_.re.get_mpz_t());
            return;
        }
        mpz_mul(t1.get_mpz_t(), x.re.get_mpz_t(), qc_.re.get_mpz_t());
        mpz_submul(t1.get_mpz_t(), x.im.get_mpz_t(), qc_.im.get_mpz_t());
        mpz_mul(t2.get_mpz_t(), x.re.get_mpz_t(), qc_.im.get_mpz_t());
        mpz_addmul(t2.get_mpz_t(), x.im.get_mpz_t(), qc_.re.get_mpz_t());
        mpz_divexact(x.re.get_mpz_t(), t1.get_mpz_t(), norm_.get_mpz_t());
        mpz_divexact(x.im.get_mpz_t(), t2.get_mpz_t(), norm_.get_mpz_t());
    }

private:
    bool real_;
    GaussInt qc_;
    mpz_class norm_;
};

// One Bareiss step on a row: target <- (p * target - a * source) / prev on
// columns [from, n). With a = 0 this is the pure rescaling p / prev.
void bareiss_update(IntRow& target, const IntRow& source, const GaussInt& p, const GaussInt& a,
                    const ExactDivisor& prev, std::size_t from) {
    const bool a_zero = a.zero();
    mpz_class re, im;
    for (std::size_t c = from; c < target.size(); ++c) {
        GaussInt& x = target[c];
        const bool xz = x.zero();
        const bool yz = a_zero || source[c].zero();
        if (xz && yz) continue;
        re = 0;
        im = 0;
        if (!xz) {
            mpz_mul(re.get_mpz_t(), p.re.get_mpz_t(), x.re.get_mpz_t());
            mpz_submul(re.get_mpz_t(), p.im.get_mpz_t(), x.im.get_mpz_t());
            mpz_mul(im.get_mpz_t(), p.re.get_mpz_t(), x.im.get_mpz_t());
            mpz_addmul(im.get_mpz_t(), p.im.get_mpz_t(), x.re.get_mpz_t());
        }
        if (!yz) {
            const GaussInt& y = source[c];
            mpz_submul(re.get_mpz_t(), a.re.get_mpz_t(), y.re.get_mpz_t());
            mpz_addmul(re.get_mpz_t(), a.im.get_mpz_t(), y.im.get_mpz_t());
            mpz_submul(im.get_mpz_t(), a.re.get_mpz_t(), y.im.get_mpz_t());
            mpz_submul(im.get_mpz_t(), a.im.get_mpz_t(), y.re.get_mpz_t());
        }
        mpz_swap(x.re.get_mpz_t(), re.get_mpz_t());
        mpz_swap(x.im.get_mpz_t(), im.get_mpz_t());
        prev.apply(x, re, im);
    }
}

struct IntEchelon {
    std::vector<IntRow> rows;  // first pivots.size() rows are the echelon rows
    std::vector<std::size_t> pivots;
    int swaps = 0;
};

// Bareiss elimination with the first nonzero entry as pivot. Every entry stays
// a minor of the input, so all divisions are exact. With `jordan` the rows
// above the pivot are cleared as well, giving a fraction-free reduced form in
// which every pivot equals the last one.
IntEchelon bareiss(std::vector<IntRow> rows, std::size_t cols, bool jordan) {
    IntEchelon e;
    e.rows = std::move(rows);
    const std::size_t n = e.rows.size();
    GaussInt prev{1, 0};
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < n; ++c) {
        std::size_t pr = rank;
        while (pr < n && e.rows[pr][c].zero()) ++pr;
        if (pr == n) continue;
        if (pr != rank) {
            std::swap(e.rows[rank], e.rows[pr]);
            ++e.swaps;
        }
        const GaussInt p = e.rows[rank][c];
        const ExactDivisor divisor(prev);
        for (std::size_t i = jordan ? 0 : rank + 1; i < n; ++i) {
            if (i == rank) continue;
            const GaussInt a = e.rows[i][c];
            // rows above keep their earlier pivot columns, so start there
            const std::size_t from = i < rank ? e.pivots[i] : c;
            bareiss_update(e.rows[i], e.rows[rank], p, a, divisor, from);
        }
        e.pivots.push_back(c);
        prev = p;
        ++rank;
    }
    e.rows.resize(rank);
    return e;
}

std::vector<IntRow> integer_rows(const ExactMatrix& m, std::vector<mpz_class>* scales) {
    std::vector<IntRow> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class l;
        rows.push_back(to_integer_row(m, r, l));
        if (scales) scales->push_back(l);
        else make_primitive(rows.back());
    }
    return rows;
}

}  // namespace

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
}

bool ExactMatrix::is_zero() const {
    for (const auto& z : data_)
        if (!z.is_zero()) return false;
    return true;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

ExactMatrix ExactMatrix::conj() const {
    ExactMatrix t(*this);
    for (auto& z : t.data_) z = z.conj();
    return t;
}

ExactMatrix ExactMatrix::column(std::size_t c) const { return block(0, c, rows_, 1); }

ExactMatrix ExactMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
    ExactMatrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in *");
    ExactMatrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& x = a(r, k);
            if (x.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const auto& y = b(k, c);
                if (!y.is_zero()) p(r, c) += x * y;
            }
        }
    return p;
}

ExactMatrix operator*(const GaussianRational& s, ExactMatrix m) {
    for (auto& z : m.data_) z *= s;
    return m;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Eigen::MatrixXcd ExactMatrix::to_complex() const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).to_complex();
    return m;
}

std::size_t rank(const ExactMatrix& m) {
    if (m.empty()) return 0;
    return bareiss(integer_rows(m, nullptr), m.cols(), false).pivots.size();
}

RowEchelon row_echelon(const ExactMatrix& m) {
    RowEchelon out;
    if (m.empty()) {
        out.reduced = ExactMatrix(0, m.cols());
        return out;
    }
    const IntEchelon e = bareiss(integer_rows(m, nullptr), m.cols(), true);
    const std::size_t rk = e.pivots.size();
    out.pivots = e.pivots;
    out.reduced = ExactMatrix(rk, m.cols());
    if (rk == 0) return out;
    const GaussInt& p = e.rows[rk - 1][e.pivots[rk - 1]];
    const GaussianRational inv = GaussianRational(1) / GaussianRational(mpq_class(p.re), mpq_class(p.im));
    for (std::size_t k = 0; k < rk; ++k)
        for (std::size_t c = e.pivots[k]; c < m.cols(); ++c) {
            const GaussInt& x = e.rows[k][c];
            if (!x.zero()) out.reduced(k, c) = GaussianRational(mpq_class(x.re), mpq_class(x.im)) * inv;
        }
    return out;
}

ExactMatrix kernel_basis(const ExactMatrix& m) {
    const std::size_t n = m.cols();
    RowEchelon e = row_echelon(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    ExactMatrix k(n, free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        const std::size_t f = free_cols[j];
        k(f, j) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            const auto& x = e.reduced(i, f);
            if (!x.is_zero()) k(e.pivots[i], j) = -x;
        }
    }
    return k;
}

ExactMatrix inverse(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RowEchelon e = row_echelon(hstack(m, ExactMatrix::identity(n)));
    if (e.rank() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
    return e.reduced.block(0, n, n, n);
}

GaussianRational determinant(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<mpz_class> scales;
    const IntEchelon e = bareiss(integer_rows(m, &scales), n, false);
    if (e.pivots.size() < n) return 0;
    const GaussInt& p = e.rows[n - 1][n - 1];
    mpz_class denom = 1;
    for (const auto& l : scales) denom *= l;
    GaussianRational det(mpq_class(p.re, denom), mpq_class(p.im, denom));
    return e.swaps % 2 ? -det : det;
}

ExactMatrix vstack(const ExactMatrix& top, const ExactMatrix& bottom) {
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack column mismatch");
    ExactMatrix m(top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) m(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) m(top.rows() + r, c) = bottom(r, c);
    return m;
}

ExactMatrix hstack(const ExactMatrix& left, const ExactMatrix& right) {
    if (left.rows() != right.rows()) throw std::invalid_argument("hstack row mismatch");
    ExactMatrix m(left.rows(), left.cols() + right.cols());
    for (std::size_t r = 0; r < left.rows(); ++r) {
        for (std::size_t c = 0; c < left.cols(); ++c) m(r, c) = left(r, c);
        for (std::size_t c = 0; c < right.cols(); ++c) m(r, left.cols() + c) = right(r, c);
    }
    return m;
}

}  // namespace twistor
