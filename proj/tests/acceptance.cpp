// Acceptance gate: one PASS/FAIL line per criterion. `acceptance --only N`
// runs a single criterion; the exit status is nonzero when any selected
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "minsurf/cli.hpp"
#include "minsurf/identity_harness.hpp"
#include "minsurf/ramanujan_series.hpp"
#include "minsurf/surface_kernel.hpp"
#include "support/oracles.hpp"

using namespace minsurf;

namespace {

constexpr std::uint64_t seed = 20240601;

struct Verdict {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

template <class Check>
Verdict identity_campaign(int id, std::size_t count, double tol, double budget, Check check)
{
    Stopwatch sw;
    std::size_t passed = 0;
    double worst = 0.0;
    std::string first_error;
    for (const auto& s : sample_domain(SampleSpec::defaults(id, count, seed + id))) {
        try {
            const IdentityReport r = check(s);
            worst = std::max(worst, r.residual);
            passed += (r.pass && r.residual <= tol) ? 1 : 0;
        } catch (const Error& e) {
            if (first_error.empty())
                first_error = e.what();
        }
    }
    const double t = sw.seconds();
    std::ostringstream os;
    os << "identity " << id << ": " << passed << "/" << count << " samples within " << fmt("%g", tol)
       << ", max residual " << fmt("%.3g", worst) << ", " << fmt("%.2f", t) << " s (limit " << budget << " s)";
    if (!first_error.empty())
        os << ", first error: " << first_error;
    return {passed == count && t <= budget, os.str()};
}

Verdict criterion1()
{
    return identity_campaign(1, 1000, 1e-8, 10.0, [](const Sample& s) { return identity1_check(s[0], 1e-8); });
}

Verdict criterion2()
{
    return identity_campaign(2, 1000, 1e-8, 10.0,
                             [](const Sample& s) { return identity2_check(s[0], s[1], 1e-8); });
}

Verdict criterion3()
{
    return identity_campaign(3, 1000, 1e-8, 10.0, [](const Sample& s) { return identity3_check(s[0], 1e-8); });
}

Verdict criterion4_for(Identity4Form form, std::vector<std::string>& notes)
{
    Stopwatch sw;
    CheckOptions options;
    options.form = form;
    const double tol = 1e-7;
    const auto resolve_batch = sample_domain(SampleSpec::defaults(4, 8, seed + 40));
    std::vector<ComplexScalar> batch;
    for (const auto& s : resolve_batch)
        batch.push_back(s[0]);

    std::ostringstream os;
    os << "identity 4 (" << to_string(form) << " form): ";
    bool resolved = false;
    std::int64_t m = 0, n = 0;
    try {
        std::tie(m, n) = resolve_mn(batch, tol, options);
        resolved = true;
        os << "resolve_mn -> (" << m << ", " << n << ")";
    } catch (const Error& e) {
        os << "resolve_mn failed [" << e.what() << "]";
    }

    // The sample check runs even without a unique (m, n) so the residual
    // level is on record; (0, 0) is used in that case.
    std::size_t passed = 0;
    double worst = 0.0;
    const std::size_t count = 500;
    for (const auto& s : sample_domain(SampleSpec::defaults(4, count, seed + 4))) {
        const auto r = identity4_check(s[0], m, n, tol, options);
        worst = std::max(worst, r.residual);
        passed += (r.pass && r.residual <= tol) ? 1 : 0;
    }
    const double t = sw.seconds();
    os << "; " << passed << "/" << count << " samples within 1e-07 mod pi at (m, n) = (" << m << ", " << n
       << "), max residual " << fmt("%.3g", worst) << ", " << fmt("%.2f", t) << " s (limit 30 s)";
    notes.push_back(os.str());
    return {resolved && passed == count && t <= 30.0, os.str()};
}

Verdict criterion4()
{
    std::vector<std::string> notes;
    const Verdict printed = criterion4_for(Identity4Form::printed, notes);
    const Verdict half = criterion4_for(Identity4Form::half_angle, notes);
    std::printf("  supplementary: %s -> %s\n", half.detail.c_str(), half.pass ? "would pass" : "would fail");
    return printed;
}

Verdict criterion5()
{
    SplitMix64 rng(seed + 5);
    double worst = 0.0;
    std::size_t counted[3] = {0, 0, 0};
    auto diff = [](const SurfacePoint& a, const SurfacePoint& b) {
        return std::max({abs(a.x - b.x), abs(a.y - b.y), abs(a.z - b.z)});
    };
    std::string first_error;
    try {
        while (counted[0] < 200) {
            const ComplexScalar w(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
            if (abs(w) > 0.9 || distance_to_nearest(w, scherk2_poles()) < 0.1)
                continue;
            worst = std::max(worst, diff(we_integrate(WERecipe::scherk2(), w), scherk2_point(w)));
            ++counted[0];
        }
        while (counted[1] < 200) {
            const ComplexScalar w(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
            if (abs(w) > 0.9 || distance_to_nearest(w, scherk1_poles()) < 0.1)
                continue;
            worst = std::max(worst, diff(we_integrate(WERecipe::scherk1(pi / 4), w), scherk1_point(w)));
            ++counted[1];
        }
        while (counted[2] < 200) {
            const ComplexScalar w(rng.uniform(-5, 5), rng.uniform(-5, 5));
            if (abs(w) > 5 || abs(w) < 0.2)
                continue;
            worst = std::max(worst, diff(we_integrate(WERecipe::helicoid(), w), helicoid_point(w)));
            ++counted[2];
        }
    } catch (const Error& e) {
        first_error = e.what();
    }
    std::ostringstream os;
    os << "quadrature vs closed form, " << counted[0] << "/" << counted[1] << "/" << counted[2]
       << " samples (scherk2/scherk1/helicoid), max |delta| " << fmt("%.3g", worst) << " (limit 1e-08)";
    if (!first_error.empty())
        os << ", error: " << first_error;
    return {first_error.empty() && worst <= 1e-8, os.str()};
}

Verdict criterion6()
{
    SplitMix64 rng(seed + 6);
    const double h = 1e-3;
    double worst = 0.0;
    int count = 0;
    auto chart = [](auto point) {
        return [point](double u, double v) { return point(ComplexScalar(u, v)).real_parts(); };
    };
    const auto s2 = chart([](ComplexScalar z) { return scherk2_point(z, 0.0); });
    const auto s1 = chart([](ComplexScalar z) { return scherk1_point(z, {}, 0.0); });
    const auto hel = chart([](ComplexScalar z) { return helicoid_point(z, 0.0); });
    while (count < 100) {
        const int which = count % 3;
        const ComplexScalar w(rng.uniform(-2, 2), rng.uniform(-2, 2));
        double k_fd = 0.0, k_exact = 0.0;
        if (which == 0) {
            if (abs(w) > 0.9 || distance_to_nearest(w, scherk2_poles()) < 0.1)
                continue;
            k_fd = oracle::fundamental_forms_curvature(s2, w.re(), w.im(), h);
            k_exact = gauss_curvature(WERecipe::scherk2(), w);
        } else if (which == 1) {
            if (abs(w) > 0.9 || distance_to_nearest(w, scherk1_poles()) < 0.1)
                continue;
            k_fd = oracle::fundamental_forms_curvature(s1, w.re(), w.im(), h);
            k_exact = gauss_curvature(WERecipe::scherk1(), w);
        } else {
            // Stay off the branch cut of the angle coordinate.
            if (abs(w) < 0.2 || (w.re() < 0 && std::abs(w.im()) < 0.05))
                continue;
            k_fd = oracle::fundamental_forms_curvature(hel, w.re(), w.im(), h);
            k_exact = gauss_curvature(WERecipe::helicoid(), w);
        }
        worst = std::max(worst, std::abs(k_fd / k_exact - 1.0));
        ++count;
    }
    std::ostringstream os;
    os << "curvature, " << count << " points (scherk2, scherk1, helicoid), max relative error "
       << fmt("%.3g", worst) << " at h = 1e-3 (limit 1e-04)";
    return {worst <= 1e-4, os.str()};
}

Verdict criterion7()
{
    SplitMix64 rng(seed + 7);
    const double h = 1e-3;
    double worst = 0.0, worst_ratio = HUGE_VAL;
    int count[3] = {0, 0, 0};
    std::string ratio_where;
    auto record = [&](double coarse, double fine, const char* what, double x, double y) {
        worst = std::max(worst, std::abs(coarse));
        const double ratio = std::abs(coarse) / std::abs(fine);
        if (ratio < worst_ratio) {
            worst_ratio = ratio;
            std::ostringstream os;
            os << what << " (" << fmt("%.4f", x) << ", " << fmt("%.4f", y) << ")";
            ratio_where = os.str();
        }
    };
    while (count[0] < 100) {
        const double x = rng.uniform(-1.5, 1.5), y = rng.uniform(-1.5, 1.5);
        if (height_singular_distance(HeightFunction::scherk2, x, y) < pde_interior_margin)
            continue;
        record(minimal_pde_residual(HeightFunction::scherk2, x, y, h),
               minimal_pde_residual(HeightFunction::scherk2, x, y, h / 2), "scherk2", x, y);
        ++count[0];
    }
    while (count[1] < 100) {
        const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
        if (height_singular_distance(HeightFunction::helicoid, x, y) < pde_interior_margin)
            continue;
        record(minimal_pde_residual(HeightFunction::helicoid, x, y, h),
               minimal_pde_residual(HeightFunction::helicoid, x, y, h / 2), "helicoid", x, y);
        ++count[1];
    }
    while (count[2] < 100) {
        const double x = rng.uniform(-1.5, 1.5), t = rng.uniform(-2, 2);
        if (oracle::lattice_distance(x - pi / 2, pi) < pde_interior_margin)
            continue;
        record(borninfeld_pde_residual(x, t, h), borninfeld_pde_residual(x, t, h / 2), "born-infeld", x, t);
        ++count[2];
    }
    std::ostringstream os;
    os << "PDE residuals, 100 points each (scherk2, helicoid, born-infeld), max |residual| " << fmt("%.3g", worst)
       << " at h = 1e-3 (limit 1e-04), min halving ratio " << fmt("%.3f", worst_ratio) << " at " << ratio_where
       << " (limit 3.5)";
    return {worst <= 1e-4 && worst_ratio >= 3.5, os.str()};
}

Verdict criterion8()
{
    SplitMix64 rng(seed + 8);
    std::size_t violations = 0, decay_violations = 0, samples = 0;
    double worst_ratio = 0.0;
    // Log series against ln(cos y / cos x), both tail modes.
    while (samples < 500) {
        const double y = rng.uniform(-1.2, 1.2), x = rng.uniform(-1.2, 1.2);
        if (oracle::lattice_distance(x - pi / 2, pi) < 0.1 || oracle::lattice_distance(y - pi / 2, pi) < 0.1)
            continue;
        ++samples;
        const auto n = static_cast<std::int64_t>(rng.uniform(4, 3000));
        const auto want = oracle::log_cos_ratio(y, x);
        for (auto mode : {TailMode::plain, TailMode::corrected}) {
            const auto e = cos_ratio_log_series(y, x, n, mode);
            const cplx d = e.value.value() - want;
            const double err = std::hypot(d.real(), reduce_mod(d.imag(), two_pi).residual);
            if (!e.certified || err > e.tail_bound)
                ++violations;
            if (e.tail_bound > 0)
                worst_ratio = std::max(worst_ratio, err / e.tail_bound);
        }
        const double scale = std::abs(x) + std::abs(y);
        const double m = log_series_tail_constant(scale);
        for (std::int64_t k = log_series_first_bounded_k(scale); k <= 100000; ++k)
            decay_violations += abs(log_series_term(y, x, k)) > m / (static_cast<double>(k) * k) ? 1 : 0;
    }
    samples = 0;
    while (samples < 500) {
        const double a = rng.uniform(-2, 2), b = rng.uniform(-10, 10);
        const double off = std::abs(reduce_mod(b, pi).residual);
        if (off < 0.1)
            continue;
        ++samples;
        const auto n = static_cast<std::int64_t>(rng.uniform(10, 3000));
        const double want = oracle::atan_tanh_cot(a, b);
        for (auto mode : {TailMode::plain, TailMode::corrected}) {
            const auto e = atan_tanh_cot_series(a, b, n, mode);
            const double err = std::abs(reduce_mod(e.value.re() - want, pi).residual);
            if (!e.certified || err > e.tail_bound)
                ++violations;
            if (e.tail_bound > 0)
                worst_ratio = std::max(worst_ratio, err / e.tail_bound);
        }
        const double m = atan_series_tail_constant(a, b);
        for (std::int64_t k = atan_series_first_bounded_k(a, b); k <= 100000; ++k)
            decay_violations += std::abs(atan_series_term(a, b, k)) > m / (static_cast<double>(k) * k) ? 1 : 0;
    }
    std::ostringstream os;
    os << "series certification, 500 samples per series in both tail modes: " << violations
       << " error > tail_bound, max error/bound " << fmt("%.3g", worst_ratio) << "; " << decay_violations
       << " paired terms above M/k^2 for k <= 1e5";
    return {violations == 0 && decay_violations == 0, os.str()};
}

Verdict criterion9()
{
    SplitMix64 rng(seed + 9);
    std::size_t count = 0, small_u = 0, small_v = 0;
    double worst = 0.0;
    while (count < 1000) {
        cplx r(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
        cplx s(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
        if (std::abs(r) > 0.9 || std::abs(s) > 0.9)
            continue;
        switch (count % 4) {
        case 0: s *= 1e-10; break;
        case 1: r *= 1e-10; break;
        default: break;
        }
        if (std::abs(r * s - 1.0) < 0.1)
            continue;
        const auto t = hodograph_roundtrip(r, s);
        small_u += abs(t.u) < 1e-4 ? 1 : 0;
        small_v += abs(t.v) < 1e-4 ? 1 : 0;
        worst = std::max({worst, std::abs(t.r2.value() - r), std::abs(t.s2.value() - s)});
        ++count;
    }
    std::ostringstream os;
    os << "hodograph round trip, " << count << " samples (" << small_u << " with |u| < 1e-4, " << small_v
       << " with |v| < 1e-4), max error " << fmt("%.3g", worst) << " (limit 1e-12)";
    return {worst <= 1e-12 && small_u > 0 && small_v > 0, os.str()};
}

Verdict criterion10()
{
    const auto dir = std::filesystem::temp_directory_path() / "minsurf_acceptance";
    std::filesystem::create_directories(dir);
    const std::string args = " verify --identity 1,2,3,4 --form half-angle --m 0 --n 0 --samples 100 --seed 9 "
                             "--tol 1e-7 --output ";
    std::string bytes[2];
    int status[2];
    for (int k = 0; k < 2; ++k) {
        const auto path = dir / ("report_" + std::to_string(k) + ".json");
        std::filesystem::remove(path);
        status[k] = std::system((std::string(MINSURF_CLI_PATH) + args + path.string()).c_str());
        std::ifstream f(path, std::ios::binary);
        std::ostringstream os;
        os << f.rdbuf();
        bytes[k] = os.str();
    }
    const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
    std::ostringstream os;
    os << "determinism, two verify runs (400 records): " << bytes[0].size() << " bytes, "
       << (same ? "byte-identical" : "DIFFERENT") << ", exit statuses " << status[0] << "/" << status[1];
    return {same && status[0] == 0 && status[1] == 0, os.str()};
}

} // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int k = 1; k < argc; ++k) {
        if (std::string(argv[k]) == "--only" && k + 1 < argc)
            only = std::atoi(argv[++k]);
    }
    const std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8,
                                                            criterion9, criterion10};
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (only != 0 && only != id)
            continue;
        Verdict v;
        try {
            v = criteria[k]();
        } catch (const std::exception& e) {
            v = {false, std::string("unexpected error: ") + e.what()};
        }
        std::printf("criterion %d %s | %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
