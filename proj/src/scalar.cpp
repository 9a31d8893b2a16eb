#include "courant/scalar.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace courant {

std::string field_name(Field f) { return f == Field::Q ? "Q" : "Q_i"; }

Field parse_field(std::string_view s) {
    if (s == "Q") return Field::Q;
    if (s == "Q_i" || s == "Qi" || s == "Q(i)") return Field::Qi;
    throw std::invalid_argument("unknown field '" + std::string(s) + "'");
}

Scalar Scalar::frac(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    return Scalar(mpq_class(num, den));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    im_ = i;
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    if (sgn(im_) == 0) return Scalar(mpq_class(1) / re_);
    mpq_class n = re_ * re_ + im_ * im_;
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

std::string Scalar::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string s = "(" + re_.get_str();
    s += sgn(im_) < 0 ? "-" : "+";
    mpq_class a = abs(im_);
    s += a.get_str() + "i)";
    return s;
}

namespace {

mpq_class parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::string t(s);
    size_t k = 0;
    if (t[0] == '+' || t[0] == '-') k = 1;
    if (k >= t.size()) throw std::invalid_argument("bad rational '" + t + "'");
    for (size_t j = k; j < t.size(); ++j) {
        char c = t[j];
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/'))
            throw std::invalid_argument("bad rational '" + t + "'");
    }
    if (t[0] == '+') t.erase(0, 1);
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational '" + t + "'");
    if (t.find('/') != std::string::npos && sgn(q.get_den()) == 0)
        throw std::invalid_argument("zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
}

}  // namespace

Scalar Scalar::parse(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty scalar");
    if (s == "i") return Scalar::i();
    if (s == "-i") return -Scalar::i();
    if (s.front() == '(' && s.back() == ')') {
        std::string_view in = s.substr(1, s.size() - 2);
        if (in.empty() || in.back() != 'i') throw std::invalid_argument("bad gaussian '" + std::string(s) + "'");
        in.remove_suffix(1);
        // split at the last sign that is not leading
        size_t cut = std::string_view::npos;
        for (size_t j = in.size(); j-- > 1;) {
            if (in[j] == '+' || in[j] == '-') {
                cut = j;
                break;
            }
        }
        if (cut == std::string_view::npos) return Scalar(mpq_class(0), parse_rational(in));
        std::string_view im = in.substr(cut);
        if (im == "+" || im == "-") im = im == "+" ? "1" : "-1";
        return Scalar(parse_rational(in.substr(0, cut)), parse_rational(im));
    }
    return Scalar(parse_rational(s));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace courant
