#ifndef TNZ_SCALAR_HPP
#define TNZ_SCALAR_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tnz
{

using Rational = mpq_class;

/// Parses "p/q", "-p/q", "+p" or "p". Throws tnz::Error(ParseError) on
/// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& q);

/// Exact complex number with rational real and imaginary parts.
///
/// Both parts are kept canonical by GMP (reduced, positive denominator), so
/// structural equality is value equality.
class Scalar
{
  public:
    Scalar() = default;
    Scalar(int re) : re_(re) {}
    Scalar(long re) : re_(re) {}
    Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar from_fraction(long num, long den, long im_num = 0, long im_den = 1);

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    /// Real and >= 0.
    bool is_nonneg_real() const { return is_real() && sgn(re_) >= 0; }
    bool is_positive_real() const { return is_real() && sgn(re_) > 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    /// |z|^2, always a non-negative rational.
    Rational norm2() const { return re_ * re_ + im_ * im_; }
    /// Multiplicative inverse. Throws std::domain_error on zero.
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar operator+() const { return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// "p/q", "r/s i", or "p/q + r/s i" / "p/q - r/s i".
    std::string to_string() const;
    /// Accepts the output of to_string().
    static Scalar parse(std::string_view text);

    std::size_t hash() const;

  private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Free functions found by ADL (Eigen's numext uses these).
inline Scalar conj(const Scalar& s) { return s.conj(); }
inline Scalar real(const Scalar& s) { return Scalar(s.real()); }
inline Scalar imag(const Scalar& s) { return Scalar(s.imag()); }
inline Scalar abs2(const Scalar& s) { return Scalar(s.norm2()); }

} // namespace tnz

template <> struct std::hash<tnz::Scalar> {
    std::size_t operator()(const tnz::Scalar& s) const { return s.hash(); }
};

#endif // TNZ_SCALAR_HPP
