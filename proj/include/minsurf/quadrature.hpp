#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "minsurf/error.hpp"

namespace minsurf::quadrature {

template <std::size_t Dim>
using Vec = std::array<std::complex<double>, Dim>;

template <std::size_t Dim>
struct Result {
    Vec<Dim> value{};
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

template <std::size_t Dim>
struct Panel {
    double a = 0.0;
    double b = 0.0;
    Vec<Dim> kronrod{};
    double error = 0.0;
};

template <std::size_t Dim, class F>
Panel<Dim> gk15(const F& f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    Panel<Dim> p{a, b, {}, 0.0};
    Vec<Dim> gauss{};
    const Vec<Dim> fc = f(centre);
    for (std::size_t d = 0; d < Dim; ++d) {
        p.kronrod[d] = wgk[7] * fc[d];
        gauss[d] = wg[3] * fc[d];
    }
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const Vec<Dim> f1 = f(centre - dx);
        const Vec<Dim> f2 = f(centre + dx);
        for (std::size_t d = 0; d < Dim; ++d) {
            p.kronrod[d] += wgk[j] * (f1[d] + f2[d]);
            if (j % 2 == 1)
                gauss[d] += wg[j / 2] * (f1[d] + f2[d]);
        }
    }
    for (std::size_t d = 0; d < Dim; ++d) {
        p.kronrod[d] *= half;
        gauss[d] *= half;
        p.error = std::max(p.error, std::abs(p.kronrod[d] - gauss[d]));
    }
    return p;
}

} // namespace detail

/// Adaptive G7K15 on [a, b] for a vector of complex integrands. A panel is
/// accepted when its Kronrod-Gauss difference is below abs_tol scaled by its
/// share of the interval, so the summed estimate stays below abs_tol.
template <std::size_t Dim, class F>
Result<Dim> integrate(const F& f, double a, double b, double abs_tol, int max_intervals = 20000)
{
    Result<Dim> out;
    if (a == b)
        return out;

    const double length = std::abs(b - a);
    std::vector<detail::Panel<Dim>> pending{detail::gk15<Dim>(f, a, b)};
    while (!pending.empty()) {
        auto panel = pending.back();
        pending.pop_back();
        const double budget = abs_tol * std::abs(panel.b - panel.a) / length;
        if (panel.error <= budget) {
            for (std::size_t d = 0; d < Dim; ++d)
                out.value[d] += panel.kronrod[d];
            out.error += panel.error;
            ++out.intervals;
            continue;
        }
        if (out.intervals + static_cast<int>(pending.size()) + 2 > max_intervals)
            throw Error(ErrorKind::tolerance_not_met, "adaptive quadrature exhausted its interval budget");
        const double mid = 0.5 * (panel.a + panel.b);
        pending.push_back(detail::gk15<Dim>(f, panel.a, mid));
        pending.push_back(detail::gk15<Dim>(f, mid, panel.b));
    }
    return out;
}

} // namespace minsurf::quadrature
