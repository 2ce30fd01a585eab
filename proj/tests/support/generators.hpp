#pragma once

// Small seeded generators for property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace gen {

class Source {
public:
    explicit Source(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    std::complex<double> in_box(double half_width)
    {
        return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
    }

    std::complex<double> in_disk(double radius)
    {
        for (;;) {
            const auto z = in_box(radius);
            if (std::abs(z) <= radius)
                return z;
        }
    }

    std::complex<double> in_annulus(double inner, double outer)
    {
        for (;;) {
            const auto z = in_box(outer);
            const double m = std::abs(z);
            if (m >= inner && m <= outer)
                return z;
        }
    }

    /// Log-uniform modulus in [lo, hi], uniform angle.
    std::complex<double> log_polar(double lo, double hi)
    {
        const double m = std::exp(uniform(std::log(lo), std::log(hi)));
        return std::polar(m, uniform(-3.141592653589793, 3.141592653589793));
    }

    std::uint64_t bits() { return rng_(); }

private:
    std::mt19937_64 rng_;
};

} // namespace gen
