#pragma once

// Truncated evaluation of the two Ramanujan series with certified tails.
//
//   ln(cos y / cos x) = sum_{k>=1} ln( (c_k^2 - y^2) / (c_k^2 - x^2) ),  c_k = (k - 1/2) pi
//   atan(tanh A cot B) = atan(A/B) + sum_{k>=1} [atan(A/(B + k pi)) + atan(A/(B - k pi))]   (mod pi)
//
// Both are written in the literature as pairs of sums whose individual terms
// decay like 1/k. The +k and -k terms are always combined before summation;
// the paired terms decay like 1/k^2.
//
// Tail bounds. Let S = |x| + |y| (resp. T = |A| + |B|). For every k with
// c_k >= 2S (resp. k pi >= 2T):
//
//   plain      |term_k| <= M / k^2,  M = 16 S^2 / pi^2
//                                    (resp. 8|A||B|/pi^2 + 8 A^2/pi^2),
//              so the tail after N pairs is <= M / N.
//   corrected  the leading tail term is added in closed form:
//                (x^2 - y^2) * sum_{k>N} 1/c_k^2        with sum_{k>=1} 1/c_k^2 = 1/2
//               -2AB        * sum_{k>N} 1/(k pi)^2     with sum_{k>=1} 1/(k pi)^2 = 1/6
//              and what remains is bounded by
//                2(|x|^4 + |y|^4) / (9 pi^4 (N - 1/2)^3)
//                8|A||B|(B^2 + 4A^2) / (9 pi^4 N^3).
//
// The log bound follows from |ln(1+u)| <= 2|u| (|u| <= 1/2) and the series
// of ln(1 - w) for |w| <= 1/4. The arctan bound uses |atan u| <= |u| and the
// mean value theorem on atan(u) - u.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "minsurf/complex_elementary.hpp"
#include "minsurf/summation.hpp"

namespace minsurf {

enum class TailMode { plain, corrected };

struct SeriesEval {
    ComplexScalar value;
    std::int64_t terms_used = 0;
    /// +inf when not certified.
    double tail_bound = 0.0;
    bool certified = false;
    /// value - 2*pi*i*branch_shift has its imaginary part in [-pi, pi).
    /// Always 0 for the arctan series.
    std::int64_t branch_shift = 0;
    TailMode mode = TailMode::plain;
};

inline constexpr std::int64_t max_pairs = 100'000'000;

/// Distance under which an argument counts as sitting on a pole.
inline constexpr double pole_guard = 1e-9;

inline const SeriesEval& require_certified(const SeriesEval& eval)
{
    if (!eval.certified) {
        std::ostringstream os;
        os << eval.terms_used << " pairs is below the certification threshold";
        throw Error(ErrorKind::uncertifiable, os.str());
    }
    return eval;
}

// ---------------------------------------------------------------------------
// cos-ratio log series

inline double log_series_node(std::int64_t k) noexcept
{
    return (static_cast<double>(k) - 0.5) * pi;
}

inline double log_series_tail_constant(double scale) noexcept
{
    return 16.0 * scale * scale / (pi * pi);
}

/// Smallest k >= 1 with c_k >= 2 * scale; every paired term from here on
/// obeys the tail estimates.
inline std::int64_t log_series_first_bounded_k(double scale) noexcept
{
    auto k = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(2.0 * scale / pi + 0.5)));
    while (log_series_node(k) < 2.0 * scale)
        ++k;
    while (k > 1 && log_series_node(k - 1) >= 2.0 * scale)
        --k;
    return k;
}

/// ln( (c_k - y)(c_k + y) / ((c_k - x)(c_k + x)) ), principal branch.
inline ComplexScalar log_series_term(const ComplexScalar& y, const ComplexScalar& x, std::int64_t k)
{
    const double c = log_series_node(k);
    const cplx den = (c - x.value()) * (c + x.value());
    return principal_ln1p((x.value() - y.value()) * (x.value() + y.value()) / den);
}

namespace detail {

/// Distance from z to the nearest odd multiple of pi/2 and that node's index k
/// (the node is +-c_k).
inline std::pair<double, std::int64_t> nearest_log_node(const ComplexScalar& z) noexcept
{
    const double r = std::abs(z.re());
    const double k = std::max(1.0, std::round(r / pi + 0.5));
    const double c = (k - 0.5) * pi;
    return {std::hypot(r - c, z.im()), static_cast<std::int64_t>(k)};
}

inline void require_positive_pairs(std::int64_t n_pairs)
{
    if (n_pairs < 1)
        throw Error(ErrorKind::domain, "n_pairs must be positive");
}

} // namespace detail

inline SeriesEval cos_ratio_log_series(const ComplexScalar& y, const ComplexScalar& x, std::int64_t n_pairs,
                                       TailMode mode = TailMode::plain)
{
    detail::require_positive_pairs(n_pairs);
    if (const auto [dist, k] = detail::nearest_log_node(x); dist < pole_guard) {
        std::ostringstream os;
        os << "x = " << to_string(x) << " is an odd multiple of pi/2 (cos x = 0)";
        throw Error(ErrorKind::pole, os.str());
    }
    if (const auto [dist, k] = detail::nearest_log_node(y); dist < pole_guard && k <= n_pairs) {
        std::ostringstream os;
        os << "factor " << k << " vanishes at y = " << to_string(y);
        throw Error(ErrorKind::pole, os.str());
    }

    CompensatedComplexSum sum;
    CompensatedSum inverse_squares;
    const cplx y2 = y.value() * y.value();
    const cplx x2 = x.value() * x.value();
    const cplx x_minus_y = x.value() - y.value(), x_plus_y = x.value() + y.value();
    for (std::int64_t k = 1; k <= n_pairs; ++k) {
        const double c = log_series_node(k);
        const cplx den = (c - x.value()) * (c + x.value());
        sum.add(principal_ln1p(x_minus_y * x_plus_y / den).value());
        if (mode == TailMode::corrected)
            inverse_squares.add(1.0 / (c * c));
    }

    const double scale = abs(x) + abs(y);
    SeriesEval out;
    out.terms_used = n_pairs;
    out.mode = mode;
    out.certified = n_pairs + 1 >= log_series_first_bounded_k(scale);

    cplx value = sum.value();
    const auto n = static_cast<double>(n_pairs);
    if (mode == TailMode::plain) {
        out.tail_bound = log_series_tail_constant(scale) / n;
    } else {
        value += (x2 - y2) * (0.5 - inverse_squares.value());
        const double ax = abs(x), ay = abs(y);
        const double h = n - 0.5;
        out.tail_bound = 2.0 * (ax * ax * ax * ax + ay * ay * ay * ay) / (9.0 * std::pow(pi, 4) * h * h * h);
    }
    if (!out.certified)
        out.tail_bound = std::numeric_limits<double>::infinity();
    out.value = value;
    out.branch_shift = reduce_mod(out.value, two_pi).shift;
    return out;
}

// ---------------------------------------------------------------------------
// arctan(tanh A cot B) series

inline double atan_series_tail_constant(double a, double b) noexcept
{
    const double aa = std::abs(a), ab = std::abs(b);
    return 8.0 * aa * ab / (pi * pi) + 8.0 * aa * aa / (pi * pi);
}

/// Smallest k >= 1 with k pi >= 2 (|A| + |B|).
inline std::int64_t atan_series_first_bounded_k(double a, double b) noexcept
{
    const double t = std::abs(a) + std::abs(b);
    auto k = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(2.0 * t / pi)));
    while (static_cast<double>(k) * pi < 2.0 * t)
        ++k;
    while (k > 1 && static_cast<double>(k - 1) * pi >= 2.0 * t)
        --k;
    return k;
}

/// atan(A/(B + k pi)) + atan(A/(B - k pi)).
inline double atan_series_term(double a, double b, std::int64_t k) noexcept
{
    const double c = static_cast<double>(k) * pi;
    return std::atan(a / (b + c)) + std::atan(a / (b - c));
}

inline SeriesEval atan_tanh_cot_series(double a, double b, std::int64_t n_pairs, TailMode mode = TailMode::plain)
{
    detail::require_positive_pairs(n_pairs);
    if (!std::isfinite(a) || !std::isfinite(b))
        throw Error(ErrorKind::non_finite, "atan_tanh_cot_series needs finite A and B");
    if (std::abs(reduce_mod(b, pi).residual) < pole_guard) {
        std::ostringstream os;
        os.precision(17);
        os << "B = " << b << " is a multiple of pi (cot pole)";
        throw Error(ErrorKind::pole, os.str());
    }

    CompensatedSum sum;
    CompensatedSum inverse_squares;
    sum.add(std::atan(a / b));
    for (std::int64_t k = 1; k <= n_pairs; ++k) {
        const double c = static_cast<double>(k) * pi;
        sum.add(std::atan(a / (b + c)));
        sum.add(std::atan(a / (b - c)));
        if (mode == TailMode::corrected)
            inverse_squares.add(1.0 / (c * c));
    }

    SeriesEval out;
    out.terms_used = n_pairs;
    out.mode = mode;
    out.certified = n_pairs + 1 >= atan_series_first_bounded_k(a, b);

    double value = sum.value();
    const auto n = static_cast<double>(n_pairs);
    if (mode == TailMode::plain) {
        out.tail_bound = atan_series_tail_constant(a, b) / n;
    } else {
        value += -2.0 * a * b * (1.0 / 6.0 - inverse_squares.value());
        const double aa = std::abs(a), ab = std::abs(b);
        out.tail_bound = 8.0 * aa * ab * (ab * ab + 4.0 * aa * aa) / (9.0 * std::pow(pi, 4) * n * n * n);
    }
    if (!out.certified)
        out.tail_bound = std::numeric_limits<double>::infinity();
    out.value = ComplexScalar(value);
    return out;
}

// ---------------------------------------------------------------------------

/// Smallest N whose certified tail bound is <= tolerance for every argument
/// set with |x| + |y| <= scale (log series) or |A| + |B| <= scale (arctan
/// series). In plain mode M(s) = 16 s^2 / pi^2 dominates both constants; in
/// corrected mode 8 s^4 / (9 pi^4 (N - 1/2)^3) dominates both remainders.
inline std::int64_t choose_n_pairs(double argument_scale, double tolerance, TailMode mode = TailMode::plain)
{
    if (!(tolerance > 0.0))
        throw Error(ErrorKind::domain, "choose_n_pairs needs a positive tolerance");
    if (!(argument_scale >= 0.0) || !std::isfinite(argument_scale))
        throw Error(ErrorKind::domain, "choose_n_pairs needs a finite nonnegative argument scale");
    if (argument_scale == 0.0)
        return 1;

    const std::int64_t threshold = std::max<std::int64_t>(1, log_series_first_bounded_k(argument_scale) - 1);
    double needed = 0.0;
    if (mode == TailMode::plain) {
        needed = std::ceil(log_series_tail_constant(argument_scale) / tolerance);
    } else {
        const double s4 = std::pow(argument_scale, 4);
        needed = std::ceil(0.5 + std::cbrt(8.0 * s4 / (9.0 * std::pow(pi, 4) * tolerance)));
    }
    const double n = std::max(static_cast<double>(threshold), needed);
    if (!(n <= static_cast<double>(max_pairs))) {
        std::ostringstream os;
        os << "tolerance " << tolerance << " at scale " << argument_scale << " needs more than " << max_pairs
           << " pairs";
        throw Error(ErrorKind::cap_exceeded, os.str());
    }
    return static_cast<std::int64_t>(n);
}

} // namespace minsurf
