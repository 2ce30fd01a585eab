#pragma once

// Residual checks for the four series identities, seeded domain sampling and
// the integer-offset resolver for identity 4.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minsurf/complex_elementary.hpp"
#include "minsurf/ramanujan_series.hpp"
#include "minsurf/surface_kernel.hpp"

namespace minsurf {

struct IdentityReport {
    int identity_id = 0;
    std::vector<ComplexScalar> parameter;
    ComplexScalar lhs;
    ComplexScalar rhs;
    double residual = 0.0;
    std::int64_t lattice_shift = 0;
    /// pi, 2*pi, or 0 for an exact comparison.
    double modulus = 0.0;
    std::int64_t n_pairs = 0;
    double tail_bound = 0.0;
    bool pass = false;
};

/// printed:    n pi + X   vs  sum_k atan(sqrt2 Im atan(w^2) / (m pi + Y + k pi))
/// half_angle: n pi + X/2 vs  sum_k atan(Im atan(w^2) / (m pi + Y/2 + k pi))
/// with X = Im ln((w^2 + sqrt2 w + 1)/(w^2 - sqrt2 w + 1)), Y = 2 Re atan(sqrt2 w/(1 - w^2)).
enum class Identity4Form { printed, half_angle };

constexpr std::string_view to_string(Identity4Form form) noexcept
{
    return form == Identity4Form::printed ? "printed" : "half-angle";
}

constexpr std::string_view to_string(TailMode mode) noexcept
{
    return mode == TailMode::plain ? "plain" : "corrected";
}

struct CheckOptions {
    double exclusion_radius = default_exclusion_radius;
    double cot_margin = 0.05;
    std::optional<std::int64_t> n_pairs;
    TailMode mode = TailMode::corrected;
    Identity4Form form = Identity4Form::printed;
};

namespace detail {

inline void require_tolerance(double tol)
{
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw Error(ErrorKind::domain, "tolerance must be positive and finite");
}

inline std::int64_t pairs_for(double scale, double tol, const CheckOptions& options)
{
    if (options.n_pairs) {
        if (*options.n_pairs < 1)
            throw Error(ErrorKind::domain, "n_pairs override must be positive");
        return *options.n_pairs;
    }
    return choose_n_pairs(scale, tol, options.mode);
}

inline void require_cot_margin(double b, double margin, std::string_view what)
{
    if (std::abs(reduce_mod(b, pi).residual) < margin) {
        std::ostringstream os;
        os.precision(17);
        os << what << " = " << b << " is within " << margin << " of a multiple of pi (cot pole)";
        throw Error(ErrorKind::pole, os.str());
    }
}

/// Fills residual, shift and pass from lhs, rhs, modulus and tail_bound.
/// For modulus 2 pi the imaginary part is reduced, for pi the real part.
inline IdentityReport finish(IdentityReport r, double tol)
{
    const ComplexScalar diff = r.lhs - r.rhs;
    if (r.modulus == two_pi) {
        const auto red = reduce_mod(diff, two_pi);
        r.residual = abs(red.residual);
        r.lattice_shift = red.shift;
    } else if (r.modulus == pi) {
        const auto red = reduce_mod(diff.re(), pi);
        r.residual = std::hypot(red.residual, diff.im());
        r.lattice_shift = red.shift;
    } else {
        r.residual = abs(diff);
        r.lattice_shift = 0;
    }
    r.pass = r.residual <= tol + r.tail_bound;
    return r;
}

inline IdentityReport log_identity(int id, std::vector<ComplexScalar> params, const ComplexScalar& lhs,
                                   const ComplexScalar& y, const ComplexScalar& x, double tol,
                                   const CheckOptions& options)
{
    const std::int64_t n = pairs_for(abs(x) + abs(y), tol, options);
    const SeriesEval eval = require_certified(cos_ratio_log_series(y, x, n, options.mode));
    IdentityReport r;
    r.identity_id = id;
    r.parameter = std::move(params);
    r.lhs = lhs;
    r.rhs = eval.value;
    r.modulus = two_pi;
    r.n_pairs = n;
    r.tail_bound = eval.tail_bound;
    return finish(std::move(r), tol);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Identity 1: Re ln((1+w^2)/(1-w^2)) = ln(cos y / cos x) with the Scherk-2
// coordinates x = 2 Re atan w, y = -Im ln((1+w)/(1-w)).

inline IdentityReport identity1_variant_check(const ComplexScalar& zeta, double tol, std::pair<int, int> flips,
                                              const CheckOptions& options = {})
{
    detail::require_tolerance(tol);
    if ((flips.first != 1 && flips.first != -1) || (flips.second != 1 && flips.second != -1))
        throw Error(ErrorKind::domain, "flips must be +1 or -1");
    detail::require_clear(zeta, scherk2_poles(), options.exclusion_radius, "identity 1");
    const SurfacePoint p = scherk2_point(zeta, options.exclusion_radius);
    const ComplexScalar y = static_cast<double>(flips.first) * p.y.re();
    const ComplexScalar x = static_cast<double>(flips.second) * p.x.re();
    return detail::log_identity(1, {zeta}, p.z, y, x, tol, options);
}

inline IdentityReport identity1_check(const ComplexScalar& zeta, double tol, const CheckOptions& options = {})
{
    return identity1_variant_check(zeta, tol, {1, 1}, options);
}

// ---------------------------------------------------------------------------
// Identity 2: the Born-Infeld soliton height against the log series at
// y = i t.

inline IdentityReport identity2_check(const ComplexScalar& r, const ComplexScalar& s, double tol,
                                      const CheckOptions& options = {})
{
    detail::require_tolerance(tol);
    const SurfacePoint p = bi_soliton_point(r, s, options.exclusion_radius);
    const ComplexScalar y = ComplexScalar(0.0, 1.0) * p.y;
    return detail::log_identity(2, {r, s}, p.z, y, p.x, tol, options);
}

// ---------------------------------------------------------------------------
// Identity 3: helicoid height minus atan(tanh A cot B) against minus the
// paired arctan sum, A = Re(w - 1/w)/2, B = -Im(w + 1/w)/2.

inline IdentityReport identity3_check(const ComplexScalar& zeta, double tol, const CheckOptions& options = {})
{
    detail::require_tolerance(tol);
    detail::require_clear(zeta, helicoid_poles(), std::max(options.exclusion_radius, pole_guard), "identity 3");
    const cplx w = zeta.value();
    const double a = 0.5 * (w - 1.0 / w).real();
    const double b = -0.5 * (w + 1.0 / w).imag();
    detail::require_cot_margin(b, options.cot_margin, "B");

    const std::int64_t n = detail::pairs_for(std::abs(a) + std::abs(b), tol, options);
    const SeriesEval eval = require_certified(atan_tanh_cot_series(a, b, n, options.mode));

    IdentityReport r;
    r.identity_id = 3;
    r.parameter = {zeta};
    r.lhs = -pi / 2.0 + principal_ln(zeta).im() - std::atan(std::tanh(a) / std::tan(b));
    r.rhs = std::atan(a / b) - eval.value.re();
    r.modulus = pi;
    r.n_pairs = n;
    r.tail_bound = eval.tail_bound;
    return detail::finish(std::move(r), tol);
}

// ---------------------------------------------------------------------------
// Identity 4: Scherk-1 coordinates against the doubly infinite arctan sum.

namespace detail {

struct Identity4Terms {
    double lhs_base;   // X or X/2
    double numerator;  // A
    double denominator; // Y or Y/2, before the m pi shift
};

inline Identity4Terms identity4_terms(const ComplexScalar& zeta, Identity4Form form)
{
    const cplx w = zeta.value();
    const double x = principal_ln((w * w + sqrt2 * w + 1.0) / (w * w - sqrt2 * w + 1.0)).im();
    const double y = 2.0 * principal_atan_ratio(sqrt2 * w, 1.0 - w * w).re();
    const double h = principal_atan(w * w).im();
    if (form == Identity4Form::printed)
        return {x, sqrt2 * h, y};
    return {0.5 * x, h, 0.5 * y};
}

struct Identity4Eval {
    Identity4Terms terms;
    double lhs;
    SeriesEval series;
};

inline Identity4Eval identity4_eval(const ComplexScalar& zeta, std::int64_t m, std::int64_t n, double tol,
                                    const CheckOptions& options)
{
    detail::require_clear(zeta, scherk1_poles(), options.exclusion_radius, "identity 4");
    const Identity4Terms t = identity4_terms(zeta, options.form);
    const double b = static_cast<double>(m) * pi + t.denominator;
    require_cot_margin(b, options.cot_margin, "B");
    const std::int64_t pairs = pairs_for(std::abs(t.numerator) + std::abs(b), tol, options);
    SeriesEval series = require_certified(atan_tanh_cot_series(t.numerator, b, pairs, options.mode));
    return {t, static_cast<double>(n) * pi + t.lhs_base, series};
}

} // namespace detail

inline IdentityReport identity4_check(const ComplexScalar& zeta, std::int64_t m, std::int64_t n, double tol,
                                      const CheckOptions& options = {})
{
    detail::require_tolerance(tol);
    const auto e = detail::identity4_eval(zeta, m, n, tol, options);
    IdentityReport r;
    r.identity_id = 4;
    r.parameter = {zeta};
    r.lhs = e.lhs;
    r.rhs = e.series.value;
    r.modulus = pi;
    r.n_pairs = e.series.terms_used;
    r.tail_bound = e.series.tail_bound;
    return detail::finish(std::move(r), tol);
}

/// Exhaustive search over (m, n) in [-8, 8]^2. A pair passes when the worst
/// unreduced |lhs - rhs| over the samples is within tol plus its tail bound;
/// reducing modulo pi would make every pair pass.
inline std::pair<std::int64_t, std::int64_t> resolve_mn(const std::vector<ComplexScalar>& samples, double tol,
                                                        const CheckOptions& options = {})
{
    detail::require_tolerance(tol);
    if (samples.empty())
        throw Error(ErrorKind::unresolved, "resolve_mn needs at least one sample");
    constexpr std::int64_t box = 8;
    std::vector<std::pair<std::int64_t, std::int64_t>> passing;
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t m = -box; m <= box; ++m) {
        for (std::int64_t n = -box; n <= box; ++n) {
            bool ok = true;
            double worst = 0.0;
            for (const auto& z : samples) {
                double excess = 0.0;
                try {
                    const auto e = detail::identity4_eval(z, m, n, tol, options);
                    const double diff = std::abs(e.lhs - e.series.value.re());
                    worst = std::max(worst, diff);
                    excess = diff - (tol + e.series.tail_bound);
                } catch (const Error& err) {
                    if (err.kind() != ErrorKind::pole)
                        throw;
                    ok = false;
                    break;
                }
                if (excess > 0.0)
                    ok = false;
            }
            if (ok)
                passing.emplace_back(m, n);
            best = std::min(best, worst);
        }
    }
    if (passing.empty()) {
        std::ostringstream os;
        os.precision(6);
        os << "no (m, n) in [-8, 8]^2 satisfies identity 4; smallest worst residual " << best;
        throw Error(ErrorKind::unresolved, os.str());
    }
    if (passing.size() > 1) {
        std::ostringstream os;
        os << passing.size() << " (m, n) pairs pass, e.g. (" << passing[0].first << ", " << passing[0].second
           << ") and (" << passing[1].first << ", " << passing[1].second << ")";
        throw Error(ErrorKind::ambiguous, os.str());
    }
    return passing.front();
}

// ---------------------------------------------------------------------------
// Sampling

/// SplitMix64; identical sequences on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/// Regions: identities 1 and 4 sample the disk inner <= |w| <= outer,
/// identity 2 samples (r, s) in (-outer, outer)^2 (or the disk |.| <= outer
/// with complex_pairs), identity 3 the annulus inner <= |w| <= outer.
struct SampleSpec {
    int identity_id = 1;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    double exclusion_radius = default_exclusion_radius;
    double inner_radius = 0.0;
    double outer_radius = 0.9;
    double cot_margin = 0.05;
    bool complex_pairs = false;

    static SampleSpec defaults(int identity_id, std::size_t count, std::uint64_t seed)
    {
        SampleSpec s;
        s.identity_id = identity_id;
        s.count = count;
        s.seed = seed;
        if (identity_id == 3) {
            s.inner_radius = 0.2;
            s.outer_radius = 5.0;
        }
        return s;
    }
};

using Sample = std::vector<ComplexScalar>;

inline constexpr std::size_t max_sample_attempts = 1'000'000;

namespace detail {

inline ComplexScalar draw_in_disk(SplitMix64& rng, double outer)
{
    const double re = rng.uniform(-outer, outer);
    const double im = rng.uniform(-outer, outer);
    return {re, im};
}

inline bool sample_admissible(const SampleSpec& spec, const Sample& s)
{
    const double r_in = spec.inner_radius, r_out = spec.outer_radius;
    auto in_ring = [&](const ComplexScalar& z) {
        const double m = abs(z);
        return m >= r_in && m <= r_out;
    };
    switch (spec.identity_id) {
    case 1:
        return in_ring(s[0]) && distance_to_nearest(s[0], scherk2_poles()) >= spec.exclusion_radius;
    case 2:
        for (const auto& z : s) {
            if (spec.complex_pairs && !in_ring(z))
                return false;
            if (distance_to_nearest(z, bi_soliton_singular_values()) < spec.exclusion_radius)
                return false;
        }
        return true;
    case 3: {
        if (!in_ring(s[0]) || abs(s[0]) < spec.exclusion_radius)
            return false;
        const cplx w = s[0].value();
        const double b = -0.5 * (w + 1.0 / w).imag();
        return std::abs(reduce_mod(b, pi).residual) >= spec.cot_margin;
    }
    case 4: {
        if (!in_ring(s[0]) || distance_to_nearest(s[0], scherk1_poles()) < spec.exclusion_radius)
            return false;
        const auto full = identity4_terms(s[0], Identity4Form::printed);
        return std::abs(reduce_mod(full.denominator, pi).residual) >= spec.cot_margin &&
               std::abs(reduce_mod(0.5 * full.denominator, pi).residual) >= spec.cot_margin;
    }
    default:
        return false;
    }
}

} // namespace detail

inline void validate(const SampleSpec& spec)
{
    if (spec.identity_id < 1 || spec.identity_id > 4)
        throw Error(ErrorKind::config_invalid, "identity id must be 1..4");
    if (!(spec.exclusion_radius > 0.0) || !std::isfinite(spec.exclusion_radius))
        throw Error(ErrorKind::config_invalid, "exclusion radius must be positive");
    if (!(spec.outer_radius > 0.0) || !std::isfinite(spec.outer_radius) || !(spec.inner_radius >= 0.0) ||
        spec.inner_radius > spec.outer_radius)
        throw Error(ErrorKind::config_invalid, "sampling region bounds are invalid");
    if (!(spec.cot_margin >= 0.0))
        throw Error(ErrorKind::config_invalid, "cot margin must be nonnegative");
}

/// Rejection sampling; each sample holds one parameter (two for identity 2).
inline std::vector<Sample> sample_domain(const SampleSpec& spec)
{
    validate(spec);
    std::vector<Sample> out;
    out.reserve(spec.count);
    SplitMix64 rng(spec.seed);
    std::size_t attempts = 0;
    while (out.size() < spec.count) {
        if (++attempts > max_sample_attempts) {
            std::ostringstream os;
            os << "only " << out.size() << " of " << spec.count << " admissible samples after "
               << max_sample_attempts << " attempts";
            throw Error(ErrorKind::cap_exceeded, os.str());
        }
        Sample s;
        if (spec.identity_id == 2) {
            if (spec.complex_pairs) {
                s = {detail::draw_in_disk(rng, spec.outer_radius), detail::draw_in_disk(rng, spec.outer_radius)};
            } else {
                const double r = rng.uniform(-spec.outer_radius, spec.outer_radius);
                const double t = rng.uniform(-spec.outer_radius, spec.outer_radius);
                s = {ComplexScalar(r), ComplexScalar(t)};
            }
        } else {
            s = {detail::draw_in_disk(rng, spec.outer_radius)};
        }
        if (detail::sample_admissible(spec, s))
            out.push_back(std::move(s));
    }
    return out;
}

} // namespace minsurf
