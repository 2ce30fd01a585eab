#pragma once

// Branch-consistent complex elementary functions.
//
// One convention is used everywhere: arg z in (-pi, pi], with the negative
// real axis mapped to +pi regardless of the sign of a zero imaginary part.
// atan and atanh are derived from principal_ln, so their cuts follow it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <sstream>
#include <string>

#include "minsurf/error.hpp"

namespace minsurf {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;

/// A complex value with both parts finite. Construction from NaN or inf
/// throws, so a stored ComplexScalar is always usable.
class ComplexScalar {
public:
    constexpr ComplexScalar() noexcept = default;

    ComplexScalar(double re, double im = 0.0) : z_(re, im) { check(); }
    ComplexScalar(cplx z) : z_(z) { check(); }

    double re() const noexcept { return z_.real(); }
    double im() const noexcept { return z_.imag(); }
    cplx value() const noexcept { return z_; }
    operator cplx() const noexcept { return z_; }

    friend bool operator==(const ComplexScalar& a, const ComplexScalar& b) noexcept
    {
        return a.z_ == b.z_;
    }

    friend ComplexScalar operator-(const ComplexScalar& a) { return ComplexScalar(-a.z_); }
    friend ComplexScalar operator+(const ComplexScalar& a, const ComplexScalar& b) { return a.z_ + b.z_; }
    friend ComplexScalar operator-(const ComplexScalar& a, const ComplexScalar& b) { return a.z_ - b.z_; }
    friend ComplexScalar operator*(const ComplexScalar& a, const ComplexScalar& b) { return a.z_ * b.z_; }
    friend ComplexScalar operator/(const ComplexScalar& a, const ComplexScalar& b) { return a.z_ / b.z_; }

private:
    void check() const
    {
        if (!std::isfinite(z_.real()) || !std::isfinite(z_.imag())) {
            std::ostringstream os;
            os << "complex scalar (" << z_.real() << ", " << z_.imag() << ") is not finite";
            throw Error(ErrorKind::non_finite, os.str());
        }
    }

    cplx z_{};
};

inline double abs(const ComplexScalar& z) noexcept { return std::abs(z.value()); }

/// ln|z| + i arg z with arg in (-pi, pi].
inline ComplexScalar principal_ln(const ComplexScalar& z)
{
    if (z.re() == 0.0 && z.im() == 0.0)
        throw Error(ErrorKind::domain, "principal_ln of zero");
    // -0.0 imaginary parts would land on -pi.
    const cplx w(z.re(), z.im() == 0.0 ? 0.0 : z.im());
    return std::log(w);
}

/// ln(1 + w) on the same branch as principal_ln, without the absolute
/// rounding of forming 1 + w when w is small.
inline ComplexScalar principal_ln1p(const ComplexScalar& w)
{
    const double a = w.re(), b = w.im();
    if (a == -1.0 && b == 0.0)
        throw Error(ErrorKind::domain, "principal_ln1p at w = -1");
    const double re = std::abs(a) + std::abs(b) < 0.5 ? 0.5 * std::log1p(a * (2.0 + a) + b * b)
                                                        : std::log(std::hypot(1.0 + a, b));
    const double im = (b == 0.0 && 1.0 + a < 0.0) ? pi : std::atan2(b, 1.0 + a);
    return ComplexScalar(re, im);
}

/// 1/2 ln((1+z)/(1-z)).
inline ComplexScalar principal_atanh(const ComplexScalar& z)
{
    if (z.im() == 0.0 && std::abs(z.re()) == 1.0)
        throw Error(ErrorKind::domain, "principal_atanh at z = +-1");
    const cplx w = z.value();
    return 0.5 * principal_ln((1.0 + w) / (1.0 - w)).value();
}

/// (1/2i) ln((1+iz)/(1-iz)), computed as -i atanh(iz) so that the two
/// functions are exactly interchangeable under z -> iz.
inline ComplexScalar principal_atan(const ComplexScalar& z)
{
    if (z.re() == 0.0 && std::abs(z.im()) == 1.0)
        throw Error(ErrorKind::domain, "principal_atan at z = +-i");
    const cplx i(0.0, 1.0);
    return -i * principal_atanh(i * z.value()).value();
}

/// principal_atan(p / q) without forming the quotient, so q = 0 yields the
/// limit value pi/2 on the principal branch.
inline ComplexScalar principal_atan_ratio(const ComplexScalar& p, const ComplexScalar& q)
{
    const cplx i(0.0, 1.0);
    const cplx num = q.value() + i * p.value();
    const cplx den = q.value() - i * p.value();
    if (den == cplx(0.0, 0.0) || num == cplx(0.0, 0.0))
        throw Error(ErrorKind::domain, "principal_atan_ratio on the log singularity p/q = +-i");
    return (0.5 / i) * principal_ln(num / den).value();
}

/// Value split as residual + shift * modulus. For complex values only the
/// imaginary part is reduced (the lattice of ln is 2*pi*i).
template <class T>
struct LatticeResidual {
    T residual{};
    std::int64_t shift = 0;
    double modulus = 0.0;
};

namespace detail {

inline std::int64_t lattice_shift(double value, double modulus)
{
    if (!(modulus > 0.0) || !std::isfinite(modulus))
        throw Error(ErrorKind::domain, "reduce_mod needs a positive finite modulus");
    if (!std::isfinite(value))
        throw Error(ErrorKind::non_finite, "reduce_mod of a non-finite value");
    return static_cast<std::int64_t>(std::floor(value / modulus + 0.5));
}

} // namespace detail

/// residual in [-modulus/2, modulus/2); residual + shift * modulus
/// reproduces value exactly (Sterbenz) for |value| < 2^40 modulus.
inline LatticeResidual<double> reduce_mod(double value, double modulus)
{
    const std::int64_t shift = detail::lattice_shift(value, modulus);
    const double residual = value - static_cast<double>(shift) * modulus;
    return {residual, shift, modulus};
}

inline LatticeResidual<ComplexScalar> reduce_mod(const ComplexScalar& value, double modulus)
{
    const auto im = reduce_mod(value.im(), modulus);
    return {ComplexScalar(value.re(), im.residual), im.shift, modulus};
}

/// Smallest distance from z to any point in the set; +inf for an empty set.
inline double distance_to_nearest(const ComplexScalar& z, std::span<const ComplexScalar> points) noexcept
{
    double best = HUGE_VAL;
    for (const auto& p : points)
        best = std::min(best, std::abs(z.value() - p.value()));
    return best;
}

inline std::string to_string(const ComplexScalar& z)
{
    std::ostringstream os;
    os.precision(17);
    os << z.re() << (std::signbit(z.im()) ? "-" : "+") << std::abs(z.im()) << "i";
    return os.str();
}

} // namespace minsurf
