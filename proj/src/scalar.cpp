#include "tnz/scalar.hpp"

#include "tnz/error.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace tnz
{

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool is_integer_text(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string_view num = s;
    std::string_view den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!is_integer_text(num) || !is_integer_text(den)) {
        throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    Rational q(n, d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_str();
}

Scalar Scalar::from_fraction(long num, long den, long im_num, long im_den)
{
    Rational re(num, den);
    Rational im(im_num, im_den);
    re.canonicalize();
    im.canonicalize();
    return Scalar(std::move(re), std::move(im));
}

Scalar Scalar::inverse() const
{
    if (is_zero()) {
        throw std::domain_error("inverse of zero scalar");
    }
    Rational n = norm2();
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    // Reduction-generated tensors are almost always real.
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    return *this *= o.inverse();
}

std::string Scalar::to_string() const
{
    if (sgn(im_) == 0) {
        return format_rational(re_);
    }
    if (sgn(re_) == 0) {
        return format_rational(im_) + " i";
    }
    if (sgn(im_) < 0) {
        return format_rational(re_) + " - " + format_rational(Rational(-im_)) + " i";
    }
    return format_rational(re_) + " + " + format_rational(im_) + " i";
}

Scalar Scalar::parse(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.empty() || s.back() != 'i') {
        return Scalar(parse_rational(s));
    }
    s = trim(s.substr(0, s.size() - 1));
    // Split at a binary '+' or '-' (one preceded by whitespace).
    for (std::size_t pos = s.size(); pos-- > 1;) {
        if ((s[pos] == '+' || s[pos] == '-') && std::isspace(static_cast<unsigned char>(s[pos - 1]))) {
            Rational re = parse_rational(s.substr(0, pos));
            Rational im = parse_rational(s.substr(pos + 1));
            return Scalar(std::move(re), s[pos] == '-' ? Rational(-im) : im);
        }
    }
    return Scalar(Rational(0), parse_rational(s));
}

std::size_t Scalar::hash() const
{
    std::hash<std::string> h;
    return h(to_string());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.to_string();
}

} // namespace tnz
