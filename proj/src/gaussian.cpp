#include "twistor/gaussian.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace twistor {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool is_int(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return is_digits(s);
}

mpq_class parse_rational(std::string_view s, std::string_view whole) {
    auto fail = [&] { throw std::invalid_argument("malformed number literal '" + std::string(whole) + "'"); };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(s)) fail();
        std::string t(s);
        if (t.front() == '+') t.erase(0, 1);
        return mpq_class(mpz_class(t));
    }
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!is_int(num) || !is_digits(den)) fail();
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    mpz_class d(std::string{den});
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    mpq_class q(mpz_class(n), d);
    q.canonicalize();
    return q;
}

std::string normalize_minus(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        unsigned char c = static_cast<unsigned char>(text[k]);
        // U+2212 MINUS SIGN is E2 88 92 in UTF-8
        if (c == 0xE2 && k + 2 < text.size() && static_cast<unsigned char>(text[k + 1]) == 0x88 &&
            static_cast<unsigned char>(text[k + 2]) == 0x92) {
            out.push_back('-');
            k += 2;
        } else if (!std::isspace(c)) {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

std::string rat_string(const mpq_class& q) { return q.get_str(); }

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::parse(std::string_view text) {
    const std::string s = normalize_minus(text);
    if (s.empty()) throw std::invalid_argument("empty number literal");
    if (s.back() != 'i') return {parse_rational(s, text), 0};

    std::string_view body(s.data(), s.size() - 1);
    // The separator is the last sign that is not leading; a sign directly
    // after another sign belongs to the imaginary part ("2+-1i").
    std::size_t sep = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            sep = k;
            if (body[k - 1] == '+' || body[k - 1] == '-') sep = k - 1;
            break;
        }
    }
    if (sep == std::string_view::npos) return {0, parse_rational(body, text)};
    mpq_class re = parse_rational(body.substr(0, sep), text);
    std::string_view imag_part = body.substr(sep + 1);
    mpq_class im = parse_rational(imag_part, text);
    if (body[sep] == '-') im = -im;
    return {re, im};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    const mpq_class n = o.norm2();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string GaussianRational::to_string() const {
    if (sgn(im_) == 0) return rat_string(re_);
    if (sgn(re_) == 0) return rat_string(im_) + "i";
    if (sgn(im_) < 0) return rat_string(re_) + "-" + rat_string(mpq_class(-im_)) + "i";
    return rat_string(re_) + "+" + rat_string(im_) + "i";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace twistor
