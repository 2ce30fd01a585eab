#pragma once

// Weierstrass-Enneper surfaces: closed-form parametrizations, a pole-aware
// numerical integrator, Gaussian curvature, the Born-Infeld hodograph map,
// fundamental domains and finite-difference PDE residuals.
//
// Representation used throughout (base point zeta0, offsets = point at zeta0):
//   x = x0 + Re int (1 - w^2) R(w) dw
//   y = y0 + Re int i (1 + w^2) R(w) dw
//   z = z0 + Re int 2 w R(w) dw

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "minsurf/complex_elementary.hpp"
#include "minsurf/quadrature.hpp"

namespace minsurf {

enum class SurfaceId { scherk2, scherk1, helicoid, enneper_custom, bi_soliton };

constexpr std::string_view to_string(SurfaceId id) noexcept
{
    switch (id) {
    case SurfaceId::scherk2: return "scherk2";
    case SurfaceId::scherk1: return "scherk1";
    case SurfaceId::helicoid: return "helicoid";
    case SurfaceId::enneper_custom: return "enneper";
    case SurfaceId::bi_soliton: return "bi-soliton";
    }
    return "unknown";
}

inline SurfaceId parse_surface_id(std::string_view name)
{
    for (auto id : {SurfaceId::scherk2, SurfaceId::scherk1, SurfaceId::helicoid, SurfaceId::enneper_custom,
                    SurfaceId::bi_soliton}) {
        if (name == to_string(id))
            return id;
    }
    throw Error(ErrorKind::unsupported_surface, "unknown surface '" + std::string(name) + "'");
}

/// For the Born-Infeld soliton the middle coordinate is t.
struct SurfacePoint {
    ComplexScalar x;
    ComplexScalar y;
    ComplexScalar z;

    std::array<double, 3> real_parts() const noexcept { return {x.re(), y.re(), z.re()}; }

    double max_imag() const noexcept
    {
        return std::max({std::abs(x.im()), std::abs(y.im()), std::abs(z.im())});
    }
};

inline constexpr double default_exclusion_radius = 0.1;

// ---------------------------------------------------------------------------
// Singular sets

inline std::vector<ComplexScalar> scherk2_poles()
{
    return {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
}

/// Zeros of 1 + 2 w^2 cos(2 alpha) + w^4.
inline std::vector<ComplexScalar> scherk1_poles(double alpha = pi / 4.0)
{
    const cplx q1 = -std::exp(cplx(0.0, -2.0 * alpha));
    const cplx q2 = -std::exp(cplx(0.0, 2.0 * alpha));
    const cplx r1 = std::sqrt(q1), r2 = std::sqrt(q2);
    return {r1, -r1, r2, -r2};
}

inline std::vector<ComplexScalar> helicoid_poles() { return {{0.0, 0.0}}; }

inline std::vector<ComplexScalar> bi_soliton_singular_values()
{
    return {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
}

namespace detail {

inline void require_clear(const ComplexScalar& z, const std::vector<ComplexScalar>& singular, double radius,
                          std::string_view what)
{
    if (!(radius >= 0.0))
        throw Error(ErrorKind::domain, "exclusion radius must be nonnegative");
    const double d = distance_to_nearest(z, singular);
    if (d < radius || d == 0.0) {
        std::ostringstream os;
        os << what << " parameter " << to_string(z) << " lies within " << radius << " of a singular point";
        throw Error(ErrorKind::singular_point, os.str());
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Closed-form parametrizations

/// Scherk's second surface, R = 2/(1 - w^4), zero offsets.
inline SurfacePoint scherk2_point(const ComplexScalar& zeta, double exclusion_radius = default_exclusion_radius)
{
    detail::require_clear(zeta, scherk2_poles(), exclusion_radius, "scherk2");
    const cplx w = zeta.value();
    const double x = 2.0 * principal_atan(zeta).re();
    const double y = -principal_ln((1.0 + w) / (1.0 - w)).im();
    const double z = principal_ln((1.0 + w * w) / (1.0 - w * w)).re();
    return {x, y, z};
}

/// Born-Infeld soliton z = ln(cosh t / cos x) in hodograph parameters.
inline SurfacePoint bi_soliton_point(const ComplexScalar& r, const ComplexScalar& s,
                                     double exclusion_radius = default_exclusion_radius)
{
    const auto singular = bi_soliton_singular_values();
    detail::require_clear(r, singular, exclusion_radius, "bi-soliton r");
    detail::require_clear(s, singular, exclusion_radius, "bi-soliton s");
    const cplx rv = r.value(), sv = s.value();
    const cplx x = principal_atan(r).value() + principal_atan(s).value();
    const cplx t = -principal_atanh(r).value() + principal_atanh(s).value();
    const cplx z = 0.5 * principal_ln((1.0 + rv * rv) / (1.0 - rv * rv)).value() +
                   0.5 * principal_ln((1.0 + sv * sv) / (1.0 - sv * sv)).value();
    return {x, t, z};
}

/// Helicoid with the -pi/2 height offset; middle coordinate is t.
inline SurfacePoint helicoid_point(const ComplexScalar& zeta, double exclusion_radius = default_exclusion_radius)
{
    detail::require_clear(zeta, helicoid_poles(), exclusion_radius, "helicoid");
    const cplx w = zeta.value();
    const double x = -0.5 * (w + 1.0 / w).imag();
    const double t = 0.5 * (w - 1.0 / w).real();
    const double z = -pi / 2.0 + principal_ln(zeta).im();
    return {x, t, z};
}

/// Offsets x0, y0, z0 enter before the a/sqrt(2) and a scale factors.
struct Scherk1Params {
    double a = sqrt2;
    double x0 = 0.0;
    double y0 = 0.0;
    double z0 = 0.0;
};

/// Scherk's first surface at alpha = pi/4.
///
/// Note: these coordinates satisfy tanh(z/(2a)) = tan(x/(2a cos a)) tan(y/(2a sin a)),
/// i.e. they trace the surface with twice the scale parameter of the
/// implicit equation usually quoted alongside this R(w).
inline SurfacePoint scherk1_point(const ComplexScalar& zeta, const Scherk1Params& params = {},
                                  double exclusion_radius = default_exclusion_radius)
{
    if (!(params.a > 0.0))
        throw Error(ErrorKind::domain, "scherk1 scale a must be positive");
    detail::require_clear(zeta, scherk1_poles(), exclusion_radius, "scherk1");
    const cplx w = zeta.value();
    const double scale = params.a / sqrt2;
    const double log_part = principal_ln((w * w + sqrt2 * w + 1.0) / (w * w - sqrt2 * w + 1.0)).im();
    const double atan_part = 2.0 * principal_atan_ratio(sqrt2 * w, 1.0 - w * w).re();
    const double height = 2.0 * principal_atan(w * w).im();
    return {scale * (params.x0 + log_part), scale * (params.y0 + atan_part), params.a * (params.z0 + height)};
}

// ---------------------------------------------------------------------------
// Weierstrass-Enneper recipes

struct WERecipe {
    SurfaceId surface_id = SurfaceId::scherk2;
    double alpha = pi / 4.0;
    double a = sqrt2;
    /// Surface point at the base parameter.
    std::array<double, 3> offsets{0.0, 0.0, 0.0};
    std::vector<ComplexScalar> poles;
    ComplexScalar base{0.0, 0.0};
    std::function<cplx(cplx)> weight;

    cplx R(cplx w) const { return weight(w); }

    static WERecipe scherk2()
    {
        WERecipe r;
        r.surface_id = SurfaceId::scherk2;
        r.poles = scherk2_poles();
        r.weight = [](cplx w) { return 2.0 / (1.0 - w * w * w * w); };
        return r;
    }

    /// R = -2 a i sin(2 alpha) / (1 + 2 w^2 cos(2 alpha) + w^4).
    static WERecipe scherk1(double alpha = pi / 4.0, double a = sqrt2, std::array<double, 3> offsets = {})
    {
        if (!(alpha > 0.0 && alpha < pi / 2.0))
            throw Error(ErrorKind::domain, "scherk1 needs 0 < alpha < pi/2");
        if (!(a > 0.0))
            throw Error(ErrorKind::domain, "scherk1 needs a > 0");
        WERecipe r;
        r.surface_id = SurfaceId::scherk1;
        r.alpha = alpha;
        r.a = a;
        r.offsets = offsets;
        r.poles = scherk1_poles(alpha);
        const double c2 = std::cos(2.0 * alpha);
        const cplx numerator = cplx(0.0, -2.0 * a * std::sin(2.0 * alpha));
        r.weight = [=](cplx w) {
            const cplx w2 = w * w;
            return numerator / (1.0 + 2.0 * w2 * c2 + w2 * w2);
        };
        return r;
    }

    /// alpha = pi/4 recipe reproducing scherk1_point(., params).
    static WERecipe scherk1_matching(const Scherk1Params& params)
    {
        const double scale = params.a / sqrt2;
        return scherk1(pi / 4.0, params.a, {scale * params.x0, scale * params.y0, params.a * params.z0});
    }

    /// R = -i / (2 w^2); base point 1 since 0 is the pole.
    static WERecipe helicoid()
    {
        WERecipe r;
        r.surface_id = SurfaceId::helicoid;
        r.poles = helicoid_poles();
        r.base = ComplexScalar(1.0, 0.0);
        r.offsets = {0.0, 0.0, -pi / 2.0};
        r.weight = [](cplx w) { return cplx(0.0, -0.5) / (w * w); };
        return r;
    }

    static WERecipe custom(std::function<cplx(cplx)> weight, std::vector<ComplexScalar> poles,
                           ComplexScalar base = {}, std::array<double, 3> offsets = {})
    {
        WERecipe r;
        r.surface_id = SurfaceId::enneper_custom;
        r.weight = std::move(weight);
        r.poles = std::move(poles);
        r.base = base;
        r.offsets = offsets;
        return r;
    }

    static WERecipe enneper()
    {
        return custom([](cplx) { return cplx(1.0, 0.0); }, {});
    }
};

struct WEOptions {
    double pole_clearance = 0.05;
    double tolerance = 1e-10;
};

namespace detail {

inline double segment_distance(cplx p0, cplx p1, cplx q) noexcept
{
    const cplx d = p1 - p0;
    const double len2 = std::norm(d);
    if (len2 == 0.0)
        return std::abs(q - p0);
    const double t = std::clamp(((q - p0) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(q - (p0 + t * d));
}

inline double path_clearance(cplx p0, cplx p1, const std::vector<ComplexScalar>& poles) noexcept
{
    double best = HUGE_VAL;
    for (const auto& p : poles)
        best = std::min(best, segment_distance(p0, p1, p.value()));
    return best;
}

} // namespace detail

/// Vertices of the integration path from recipe.base to zeta: the straight
/// segment, or one detour through the segment midpoint pushed 3*clearance
/// sideways, away from the closest offending pole.
inline std::vector<cplx> plan_we_path(const WERecipe& recipe, const ComplexScalar& zeta, const WEOptions& options = {})
{
    const cplx p0 = recipe.base.value();
    const cplx p1 = zeta.value();
    const double eps = options.pole_clearance;
    if (distance_to_nearest(zeta, recipe.poles) <= eps) {
        throw Error(ErrorKind::path_blocked,
                    "endpoint " + to_string(zeta) + " is within the pole clearance of a pole");
    }
    if (detail::path_clearance(p0, p1, recipe.poles) > eps)
        return {p0, p1};

    const cplx d = p1 - p0;
    const cplx normal = cplx(0.0, 1.0) * d / std::abs(d);
    const ComplexScalar* offender = nullptr;
    double closest = HUGE_VAL;
    for (const auto& p : recipe.poles) {
        const double dist = detail::segment_distance(p0, p1, p.value());
        if (dist < closest) {
            closest = dist;
            offender = &p;
        }
    }
    const double side = (std::conj(d) * (offender->value() - p0)).imag();
    double sign = 0.0;
    if (side > 0.0) {
        sign = -1.0;
    } else if (side < 0.0) {
        sign = 1.0;
    } else {
        // Pole on the segment's line: pass on the upper (or right) side.
        sign = (normal.imag() > 0.0 || (normal.imag() == 0.0 && normal.real() > 0.0)) ? 1.0 : -1.0;
    }
    const cplx mid = 0.5 * (p0 + p1) + sign * 3.0 * eps * normal;
    if (detail::path_clearance(p0, mid, recipe.poles) <= eps || detail::path_clearance(mid, p1, recipe.poles) <= eps)
        throw Error(ErrorKind::path_blocked, "no admissible path from the base point to " + to_string(zeta));
    return {p0, mid, p1};
}

inline SurfacePoint we_integrate(const WERecipe& recipe, const ComplexScalar& zeta, const WEOptions& options = {})
{
    if (zeta == recipe.base)
        return {recipe.offsets[0], recipe.offsets[1], recipe.offsets[2]};

    const auto path = plan_we_path(recipe, zeta, options);
    const double leg_tol = options.tolerance / static_cast<double>(path.size() - 1);
    const cplx i(0.0, 1.0);
    std::array<cplx, 3> total{};
    double error = 0.0;
    for (std::size_t leg = 0; leg + 1 < path.size(); ++leg) {
        const cplx p0 = path[leg];
        const cplx d = path[leg + 1] - p0;
        auto integrand = [&](double tau) -> quadrature::Vec<3> {
            const cplx w = p0 + tau * d;
            const cplx rw = recipe.R(w) * d;
            return {(1.0 - w * w) * rw, i * (1.0 + w * w) * rw, 2.0 * w * rw};
        };
        const auto res = quadrature::integrate<3>(integrand, 0.0, 1.0, leg_tol);
        for (std::size_t c = 0; c < 3; ++c)
            total[c] += res.value[c];
        error += res.error;
    }
    if (!(error <= options.tolerance))
        throw Error(ErrorKind::tolerance_not_met, "W-E quadrature error estimate above tolerance");
    return {recipe.offsets[0] + total[0].real(), recipe.offsets[1] + total[1].real(),
            recipe.offsets[2] + total[2].real()};
}

// ---------------------------------------------------------------------------

/// K = -4 |R(w)|^-2 (1 + |w|^2)^-4.
inline double gauss_curvature(const WERecipe& recipe, const ComplexScalar& w)
{
    if (distance_to_nearest(w, recipe.poles) < 1e-12)
        throw Error(ErrorKind::singular_point, "curvature requested at a pole of R: " + to_string(w));
    const cplx r = recipe.R(w.value());
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw Error(ErrorKind::singular_point, "R is not finite at " + to_string(w));
    const double mod2 = std::norm(r);
    if (mod2 == 0.0)
        throw Error(ErrorKind::domain, "R vanishes at " + to_string(w) + "; curvature is unbounded");
    const double q = 1.0 + std::norm(w.value());
    return -4.0 / (mod2 * q * q * q * q);
}

// ---------------------------------------------------------------------------
// Born-Infeld hodograph variables

struct HodographRoundTrip {
    ComplexScalar u;
    ComplexScalar v;
    ComplexScalar r2;
    ComplexScalar s2;
};

/// (r, s) -> (u, v) = (r, s)/(1 - rs) -> (r2, s2). The inverse is written as
/// r = 2u / (1 + sqrt(1 + 4uv)), which equals (sqrt(1 + 4uv) - 1)/(2v) but
/// has no removable singularity at v = 0. It recovers (r, s) on the
/// principal sheet |rs| < 1.
inline HodographRoundTrip hodograph_roundtrip(const ComplexScalar& r, const ComplexScalar& s)
{
    const cplx rs = r.value() * s.value();
    if (std::abs(1.0 - rs) <= 1e-12)
        throw Error(ErrorKind::degenerate, "hodograph map is singular at rs = 1");
    const cplx u = r.value() / (1.0 - rs);
    const cplx v = s.value() / (1.0 - rs);
    const cplx root = std::sqrt(1.0 + 4.0 * u * v);
    const cplx denom = 1.0 + root;
    if (std::abs(denom) == 0.0)
        throw Error(ErrorKind::degenerate, "hodograph inverse off the principal sheet");
    return {u, v, 2.0 * u / denom, 2.0 * v / denom};
}

// ---------------------------------------------------------------------------
// Fundamental domains

struct FundamentalDomain {
    SurfaceId surface_id = SurfaceId::scherk2;
    std::int64_t m = 0;
    std::int64_t n = 0;
    double alpha = pi / 4.0;
    double a = sqrt2;

    /// Strict inequalities of the graph domains:
    ///   scherk2  |sqrt2 (x - y) - 4 m pi| < pi,  |sqrt2 (x + y) - 4 n pi| < pi
    ///   scherk1  |x/(a cos al) - y/(a sin al) - 2 m a pi| < a pi / 2,
    ///            |x/(a cos al) + y/(a sin al) - 2 n a pi| < a pi / 2
    bool contains(double x, double y) const
    {
        const auto md = static_cast<double>(m), nd = static_cast<double>(n);
        switch (surface_id) {
        case SurfaceId::scherk2:
            return std::abs(sqrt2 * (x - y) - 4.0 * md * pi) < pi && std::abs(sqrt2 * (x + y) - 4.0 * nd * pi) < pi;
        case SurfaceId::scherk1: {
            const double u = x / (a * std::cos(alpha));
            const double v = y / (a * std::sin(alpha));
            return std::abs(u - v - 2.0 * md * a * pi) < a * pi / 2.0 &&
                   std::abs(u + v - 2.0 * nd * a * pi) < a * pi / 2.0;
        }
        default:
            throw Error(ErrorKind::unsupported_surface,
                        "no fundamental domain for " + std::string(to_string(surface_id)));
        }
    }
};

inline bool in_fundamental_domain(SurfaceId surface_id, double x, double y, std::int64_t m, std::int64_t n,
                                  double alpha = pi / 4.0, double a = sqrt2)
{
    return FundamentalDomain{surface_id, m, n, alpha, a}.contains(x, y);
}

// ---------------------------------------------------------------------------
// PDE residuals on height functions

enum class HeightFunction { plane, paraboloid, scherk2, scherk1, helicoid };

namespace detail {

/// Distance from x to the nearest odd multiple of pi/2.
inline double cos_zero_distance(double x) noexcept
{
    const double r = std::remainder(x - pi / 2.0, pi);
    return std::abs(r);
}

} // namespace detail

/// Real height functions. scherk2 and the Born-Infeld profile use ln|cos|,
/// which has the same derivatives as the complex logarithm on every cell.
///   scherk2   ln|cos y| - ln|cos x|
///   scherk1   sqrt2 atanh(tan x tan y)   (a = sqrt2, alpha = pi/4)
///   helicoid  atan(y / x)
template <class T>
T height_at(HeightFunction fn, T x, T y)
{
    using std::abs, std::atan, std::atanh, std::cos, std::log, std::sqrt, std::tan;
    switch (fn) {
    case HeightFunction::plane: return x;
    case HeightFunction::paraboloid: return x * x + y * y;
    case HeightFunction::scherk2: return log(abs(cos(y))) - log(abs(cos(x)));
    case HeightFunction::scherk1: return sqrt(T(2)) * atanh(tan(x) * tan(y));
    case HeightFunction::helicoid: return atan(y / x);
    }
    return T(0);
}

inline double height_value(HeightFunction fn, double x, double y)
{
    return height_at<double>(fn, x, y);
}

/// Distance from (x, y) to the singular set of the height function (the
/// zeros of cos, and for scherk1 also the lines |x +- y| = pi/2 where
/// |tan x tan y| = 1). Negative outside the graph domain of scherk1;
/// +inf for the polynomial heights.
inline double height_singular_distance(HeightFunction fn, double x, double y)
{
    switch (fn) {
    case HeightFunction::plane:
    case HeightFunction::paraboloid:
        return HUGE_VAL;
    case HeightFunction::scherk2:
        return std::min(detail::cos_zero_distance(x), detail::cos_zero_distance(y));
    case HeightFunction::scherk1: {
        if (!(std::abs(std::tan(x) * std::tan(y)) < 1.0))
            return -1.0;
        return std::min({detail::cos_zero_distance(x), detail::cos_zero_distance(y),
                         detail::cos_zero_distance(x + y) / sqrt2, detail::cos_zero_distance(x - y) / sqrt2});
    }
    case HeightFunction::helicoid:
        return std::abs(x);
    }
    return -1.0;
}

/// Points at least this far from the singular set count as interior: the
/// O(h^2) term at h = 1e-3 stays below 1e-4 for every height here.
inline constexpr double pde_interior_margin = 0.35;

/// The stencil of step h reaches 2h; keeping 12h from the singular set
/// keeps every sample finite and on the same branch.
inline bool height_stencil_admissible(HeightFunction fn, double x, double y, double h)
{
    return height_singular_distance(fn, x, y) >= 12.0 * h;
}

namespace detail {

struct Derivatives {
    long double zx, zy, zxx, zyy, zxy;
};

/// Central differences: 2-point gradients, 3-point second differences per
/// axis (the 2D five-point stencil) and the 4-point cross difference.
/// Evaluated in extended precision so rounding stays well below the
/// O(h^2) truncation term at the usual steps.
template <class F>
Derivatives central_differences(const F& f, double x0, double y0, double step)
{
    using L = long double;
    const L x = x0, y = y0, h = step;
    const L f0 = f(x, y);
    const L fxp = f(x + h, y), fxm = f(x - h, y);
    const L fyp = f(x, y + h), fym = f(x, y - h);
    const L fpp = f(x + h, y + h), fpm = f(x + h, y - h);
    const L fmp = f(x - h, y + h), fmm = f(x - h, y - h);
    return {
        (fxp - fxm) / (2 * h),
        (fyp - fym) / (2 * h),
        (fxp - 2 * f0 + fxm) / (h * h),
        (fyp - 2 * f0 + fym) / (h * h),
        (fpp - fpm - fmp + fmm) / (4 * h * h),
    };
}

inline void require_step(double h)
{
    if (!(h > 0.0) || !std::isfinite(h))
        throw Error(ErrorKind::domain, "finite-difference step must be positive");
}

} // namespace detail

/// (1 + z_y^2) z_xx - 2 z_x z_y z_xy + (1 + z_x^2) z_yy.
inline double minimal_pde_residual(HeightFunction fn, double x, double y, double h)
{
    detail::require_step(h);
    if (!height_stencil_admissible(fn, x, y, h)) {
        std::ostringstream os;
        os << "stencil at (" << x << ", " << y << ") with h = " << h << " touches a singular line";
        throw Error(ErrorKind::domain, os.str());
    }
    const auto d = detail::central_differences(
        [fn](long double u, long double v) { return height_at<long double>(fn, u, v); }, x, y, h);
    return static_cast<double>((1 + d.zy * d.zy) * d.zxx - 2 * d.zx * d.zy * d.zxy + (1 + d.zx * d.zx) * d.zyy);
}

/// ln(cosh t / cos x), with ln|cos x| off the central cell.
template <class T>
T born_infeld_at(T x, T t)
{
    using std::abs, std::cos, std::cosh, std::log;
    return log(cosh(t)) - log(abs(cos(x)));
}

inline double born_infeld_height(double x, double t)
{
    return born_infeld_at<double>(x, t);
}

/// (1 - z_t^2) z_xx + 2 z_x z_t z_xt - (1 + z_x^2) z_tt on ln(cosh t / cos x).
inline double borninfeld_pde_residual(double x, double t, double h)
{
    detail::require_step(h);
    if (detail::cos_zero_distance(x) < 12.0 * h) {
        std::ostringstream os;
        os << "x = " << x << " is within the stencil margin of a zero of cos x";
        throw Error(ErrorKind::domain, os.str());
    }
    const auto d = detail::central_differences([](long double u, long double v) { return born_infeld_at(u, v); }, x, t, h);
    return static_cast<double>((1 - d.zy * d.zy) * d.zxx + 2 * d.zx * d.zy * d.zxy - (1 + d.zx * d.zx) * d.zyy);
}

} // namespace minsurf
