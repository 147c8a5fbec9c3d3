#include "twistor/univariate.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace twistor {

UniPoly::UniPoly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::from_binary_form(const HomogPoly& form) {
    if (form.num_vars() != 2) throw std::invalid_argument("binary form expected");
    const int d = form.degree();
    std::vector<GaussianRational> c(d + 1);
    // monomial_basis(2, d)[k] = x1^(d-k) x2^k
    for (int k = 0; k <= d; ++k) c[k] = form.coeff(static_cast<std::size_t>(k));
    return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    std::vector<GaussianRational> c = coeffs_;
    const GaussianRational lead = c.back();
    for (auto& x : c) x /= lead;
    return UniPoly(std::move(c));
}

GaussianRational UniPoly::evaluate(const GaussianRational& x) const {
    GaussianRational acc;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
}

std::vector<std::complex<double>> UniPoly::numeric_roots() const {
    const int d = degree();
    if (d < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    const std::complex<double> lead = leading().to_complex();
    for (int k = 0; k < d; ++k) companion(0, k) = -coeffs_[d - 1 - k].to_complex() / lead;
    for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    std::vector<std::complex<double>> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
    return roots;
}

UniPoly remainder(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<GaussianRational> r = a.coeffs();
    const int db = b.degree();
    const GaussianRational lead = b.leading();
    for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
        if (r[k].is_zero()) continue;
        const GaussianRational f = r[k] / lead;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
    }
    if (static_cast<int>(r.size()) > db) r.resize(db);
    return UniPoly(std::move(r));
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a.monic();
    UniPoly y = b.monic();
    while (!y.is_zero()) {
        UniPoly r = remainder(x, y).monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

UniPoly gcd(const std::vector<UniPoly>& polys) {
    UniPoly g;
    for (const auto& p : polys) {
        g = gcd(g, p);
        if (g.degree() == 0) break;
    }
    return g;
}

BinaryFormGcd binary_form_gcd(const std::vector<HomogPoly>& forms) {
    BinaryFormGcd out;
    std::vector<UniPoly> dehom;
    bool any_nonzero = false;
    bool all_vanish_at_infinity = true;
    for (const auto& f : forms) {
        if (f.is_zero()) continue;
        any_nonzero = true;
        UniPoly u = UniPoly::from_binary_form(f);
        // [0:1] is a zero iff the coefficient of x2^d (top degree in x) vanishes
        if (u.degree() == f.degree()) all_vanish_at_infinity = false;
        dehom.push_back(std::move(u));
    }
    if (!any_nonzero) {
        out.all_zero = true;
        return out;
    }
    out.common_zero_at_infinity = all_vanish_at_infinity;
    out.finite = gcd(dehom);
    return out;
}

}  // namespace twistor
