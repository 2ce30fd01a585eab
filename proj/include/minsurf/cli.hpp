#pragma once

// Verification campaigns, single-point evaluation and mesh export, plus the
// JSON / OBJ / CSV writers they share. Argument parsing lives in tools/.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "minsurf/identity_harness.hpp"
#include "minsurf/surface_kernel.hpp"

namespace minsurf::cli {

enum ExitStatus : int { exit_pass = 0, exit_fail = 1, exit_error = 2 };

// ---------------------------------------------------------------------------
// Formatting

/// %.17g with -0 printed as 0.
inline std::string format_number(double v)
{
    if (v == 0.0)
        v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// JSON number; non-finite values become null.
inline std::string json_number(double v)
{
    return std::isfinite(v) ? format_number(v) : "null";
}

inline std::string json_string(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out + "\"";
}

inline std::string json_complex(const ComplexScalar& z)
{
    return "[" + json_number(z.re()) + ", " + json_number(z.im()) + "]";
}

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" (no spaces).
inline ComplexScalar parse_complex(std::string_view text)
{
    auto fail = [&]() -> ComplexScalar {
        throw Error(ErrorKind::config_invalid, "cannot parse complex number '" + std::string(text) + "'");
    };
    auto parse_real = [&](std::string_view s) -> double {
        if (s.empty())
            fail();
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(std::string(s), &used);
        } catch (const std::exception&) {
            fail();
        }
        if (used != s.size())
            fail();
        return v;
    };
    if (text.empty())
        return fail();
    if (text.back() != 'i')
        return ComplexScalar(parse_real(text));

    const std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    const std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
    double im = 0.0;
    if (im_part.empty() || im_part == "+")
        im = 1.0;
    else if (im_part == "-")
        im = -1.0;
    else
        im = parse_real(im_part);
    return ComplexScalar(re_part.empty() ? 0.0 : parse_real(re_part), im);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
    std::vector<int> identities{1, 2, 3, 4};
    std::int64_t samples = 100;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    double exclusion_radius = default_exclusion_radius;
    std::optional<std::int64_t> n_pairs_override;
    std::string report_path;

    TailMode mode = TailMode::corrected;
    Identity4Form form = Identity4Form::printed;
    bool complex_pairs = false;
    /// Overrides the sampling radii (inner, outer) of every identity.
    std::optional<std::pair<double, double>> region;
    /// Fixes identity 4's offsets instead of resolving them.
    std::optional<std::pair<std::int64_t, std::int64_t>> mn;
};

inline void validate(const VerifyConfig& c)
{
    if (c.samples < 1)
        throw Error(ErrorKind::config_invalid, "samples must be at least 1");
    if (!(c.tol > 0.0) || !std::isfinite(c.tol))
        throw Error(ErrorKind::config_invalid, "tol must be positive");
    if (!(c.exclusion_radius > 0.0) || !std::isfinite(c.exclusion_radius))
        throw Error(ErrorKind::config_invalid, "exclusion radius must be positive");
    if (c.identities.empty())
        throw Error(ErrorKind::config_invalid, "no identities selected");
    for (int id : c.identities) {
        if (id < 1 || id > 4)
            throw Error(ErrorKind::config_invalid, "identity ids must be in 1..4");
    }
    if (c.n_pairs_override && *c.n_pairs_override < 1)
        throw Error(ErrorKind::config_invalid, "n-pairs must be positive");
    if (c.region && !(c.region->first >= 0.0 && c.region->first < c.region->second))
        throw Error(ErrorKind::config_invalid, "region must satisfy 0 <= lo < hi");
}

struct VerifyOutcome {
    int exit_code = exit_pass;
    std::vector<IdentityReport> records;
    std::optional<Error> error;
    std::string json;
};

inline std::string config_json(const VerifyConfig& c)
{
    std::ostringstream os;
    os << "{\"identities\": [";
    for (std::size_t k = 0; k < c.identities.size(); ++k)
        os << (k ? ", " : "") << c.identities[k];
    os << "], \"samples\": " << c.samples << ", \"seed\": " << c.seed << ", \"tol\": " << json_number(c.tol)
       << ", \"exclusion_radius\": " << json_number(c.exclusion_radius) << ", \"n_pairs\": "
       << (c.n_pairs_override ? std::to_string(*c.n_pairs_override) : "null")
       << ", \"tail_mode\": " << json_string(to_string(c.mode))
       << ", \"identity4_form\": " << json_string(to_string(c.form))
       << ", \"complex_pairs\": " << (c.complex_pairs ? "true" : "false") << ", \"region\": ";
    if (c.region)
        os << "[" << json_number(c.region->first) << ", " << json_number(c.region->second) << "]";
    else
        os << "null";
    os << ", \"mn\": ";
    if (c.mn)
        os << "[" << c.mn->first << ", " << c.mn->second << "]";
    else
        os << "null";
    os << "}";
    return os.str();
}

inline std::string record_json(const IdentityReport& r)
{
    std::ostringstream os;
    os << "{\"identity_id\": " << r.identity_id << ", \"parameter\": [";
    for (std::size_t k = 0; k < r.parameter.size(); ++k)
        os << (k ? ", " : "") << json_complex(r.parameter[k]);
    os << "], \"lhs\": " << json_complex(r.lhs) << ", \"rhs\": " << json_complex(r.rhs)
       << ", \"residual\": " << json_number(r.residual) << ", \"lattice_shift\": " << r.lattice_shift
       << ", \"modulus\": " << json_number(r.modulus) << ", \"n_pairs\": " << r.n_pairs
       << ", \"tail_bound\": " << json_number(r.tail_bound) << ", \"pass\": " << (r.pass ? "true" : "false")
       << "}";
    return os.str();
}

inline std::string report_json(const VerifyConfig& c, const std::vector<IdentityReport>& records,
                               const std::optional<Error>& error)
{
    std::size_t passed = 0;
    double max_residual = 0.0;
    for (const auto& r : records) {
        passed += r.pass ? 1 : 0;
        max_residual = std::max(max_residual, r.residual);
    }
    std::ostringstream os;
    os << "{\n  \"config\": " << config_json(c) << ",\n  \"summary\": {\"total\": " << records.size()
       << ", \"passed\": " << passed << ", \"max_residual\": " << json_number(max_residual) << "},\n"
       << "  \"records\": [";
    for (std::size_t k = 0; k < records.size(); ++k)
        os << (k ? ",\n    " : "\n    ") << record_json(records[k]);
    os << (records.empty() ? "]" : "\n  ]");
    if (error) {
        os << ",\n  \"error\": {\"kind\": " << json_string(to_string(error->kind()))
           << ", \"message\": " << json_string(error->what()) << "}";
    }
    os << "\n}\n";
    return os.str();
}

inline SampleSpec sample_spec_for(const VerifyConfig& c, int id)
{
    SampleSpec spec = SampleSpec::defaults(id, static_cast<std::size_t>(c.samples), c.seed);
    spec.exclusion_radius = c.exclusion_radius;
    spec.complex_pairs = c.complex_pairs;
    if (c.region) {
        spec.inner_radius = c.region->first;
        spec.outer_radius = c.region->second;
    }
    return spec;
}

/// Runs the campaign; records stay in identity then sample order. Evaluator
/// errors stop the run and leave a partial report.
inline VerifyOutcome run_verify_collect(const VerifyConfig& c)
{
    validate(c);
    VerifyOutcome out;
    CheckOptions options;
    options.exclusion_radius = c.exclusion_radius;
    options.n_pairs = c.n_pairs_override;
    options.mode = c.mode;
    options.form = c.form;
    try {
        for (int id : c.identities) {
            const auto samples = sample_domain(sample_spec_for(c, id));
            std::int64_t m = 0, n = 0;
            if (id == 4) {
                if (c.mn) {
                    std::tie(m, n) = *c.mn;
                } else {
                    std::vector<ComplexScalar> batch;
                    for (std::size_t k = 0; k < samples.size() && k < 8; ++k)
                        batch.push_back(samples[k][0]);
                    std::tie(m, n) = resolve_mn(batch, c.tol, options);
                }
            }
            for (const auto& s : samples) {
                switch (id) {
                case 1: out.records.push_back(identity1_check(s[0], c.tol, options)); break;
                case 2: out.records.push_back(identity2_check(s[0], s[1], c.tol, options)); break;
                case 3: out.records.push_back(identity3_check(s[0], c.tol, options)); break;
                default: out.records.push_back(identity4_check(s[0], m, n, c.tol, options)); break;
                }
            }
        }
    } catch (const Error& e) {
        out.error = e;
    }
    out.json = report_json(c, out.records, out.error);
    if (out.error)
        out.exit_code = exit_error;
    else
        out.exit_code = std::all_of(out.records.begin(), out.records.end(), [](const auto& r) { return r.pass; })
                            ? exit_pass
                            : exit_fail;
    return out;
}

inline void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
    f << text;
    if (!f)
        throw Error(ErrorKind::io, "failed writing '" + path + "'");
}

inline int run_verify(const VerifyConfig& c)
{
    const auto outcome = run_verify_collect(c);
    write_text(c.report_path, outcome.json);
    if (outcome.error)
        std::cerr << "error: " << outcome.error->what() << "\n";
    return outcome.exit_code;
}

// ---------------------------------------------------------------------------
// eval

inline SurfacePoint enneper_point(const ComplexScalar& zeta)
{
    const cplx w = zeta.value();
    const cplx w3 = w * w * w;
    return {(w - w3 / 3.0).real(), (cplx(0.0, 1.0) * (w + w3 / 3.0)).real(), (w * w).real()};
}

inline std::size_t parameter_count(SurfaceId id) { return id == SurfaceId::bi_soliton ? 2 : 1; }

inline SurfacePoint evaluate_surface(SurfaceId id, const std::vector<ComplexScalar>& params,
                                     double exclusion_radius = default_exclusion_radius)
{
    if (params.size() != parameter_count(id)) {
        throw Error(ErrorKind::config_invalid, std::string(to_string(id)) + " takes " +
                                                   std::to_string(parameter_count(id)) + " parameter(s)");
    }
    switch (id) {
    case SurfaceId::scherk2: return scherk2_point(params[0], exclusion_radius);
    case SurfaceId::scherk1: return scherk1_point(params[0], {}, exclusion_radius);
    case SurfaceId::helicoid: return helicoid_point(params[0], exclusion_radius);
    case SurfaceId::enneper_custom: return enneper_point(params[0]);
    case SurfaceId::bi_soliton: return bi_soliton_point(params[0], params[1], exclusion_radius);
    }
    throw Error(ErrorKind::unsupported_surface, "unknown surface");
}

inline std::string format_point(const SurfacePoint& p)
{
    return format_number(p.x.re()) + " " + format_number(p.y.re()) + " " + format_number(p.z.re());
}

// ---------------------------------------------------------------------------
// mesh

enum class MeshFormat { obj, csv };

struct MeshSpec {
    SurfaceId surface_id = SurfaceId::scherk2;
    int rows = 16;
    int cols = 16;
    /// re_min, re_max, im_min, im_max (r_min, r_max, s_min, s_max for bi-soliton).
    std::array<double, 4> region{-0.5, 0.5, -0.5, 0.5};
    MeshFormat format = MeshFormat::obj;
    std::string output_path;
    double exclusion_radius = default_exclusion_radius;
};

struct MeshVertex {
    double u = 0.0;
    double v = 0.0;
    SurfacePoint point;
};

struct Mesh {
    std::vector<MeshVertex> vertices;
    /// 0-based indices into vertices, counter-clockwise in parameter space.
    std::vector<std::array<std::size_t, 4>> faces;
};

namespace detail {

inline double grid_coordinate(double lo, double hi, int k, int count)
{
    return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
}

inline bool cell_contains_singularity(SurfaceId id, double u0, double u1, double v0, double v1)
{
    auto inside = [&](double u, double v) { return u >= u0 && u <= u1 && v >= v0 && v <= v1; };
    switch (id) {
    case SurfaceId::bi_soliton:
        for (double c : {-1.0, 1.0}) {
            if ((c >= u0 && c <= u1) || (c >= v0 && c <= v1))
                return true;
        }
        return false;
    case SurfaceId::enneper_custom:
        return false;
    default: {
        const auto poles = id == SurfaceId::scherk2    ? scherk2_poles()
                           : id == SurfaceId::scherk1 ? scherk1_poles()
                                                       : helicoid_poles();
        for (const auto& p : poles) {
            if (inside(p.re(), p.im()))
                return true;
        }
        return false;
    }
    }
}

} // namespace detail

inline Mesh build_mesh(const MeshSpec& spec)
{
    if (spec.rows < 1 || spec.cols < 1)
        throw Error(ErrorKind::config_invalid, "grid dimensions must be positive");
    const auto [u_lo, u_hi, v_lo, v_hi] = spec.region;
    if (!(u_lo <= u_hi && v_lo <= v_hi) || !std::isfinite(u_lo) || !std::isfinite(u_hi) || !std::isfinite(v_lo) ||
        !std::isfinite(v_hi))
        throw Error(ErrorKind::config_invalid, "region must be finite with a <= b and c <= d");

    constexpr std::size_t missing = static_cast<std::size_t>(-1);
    Mesh mesh;
    std::vector<std::size_t> index(static_cast<std::size_t>(spec.rows) * spec.cols, missing);
    for (int i = 0; i < spec.rows; ++i) {
        const double v = detail::grid_coordinate(v_lo, v_hi, i, spec.rows);
        for (int j = 0; j < spec.cols; ++j) {
            const double u = detail::grid_coordinate(u_lo, u_hi, j, spec.cols);
            std::vector<ComplexScalar> params;
            if (spec.surface_id == SurfaceId::bi_soliton)
                params = {ComplexScalar(u), ComplexScalar(v)};
            else
                params = {ComplexScalar(u, v)};
            try {
                const SurfacePoint p = evaluate_surface(spec.surface_id, params, spec.exclusion_radius);
                const auto xyz = p.real_parts();
                if (std::isfinite(xyz[0]) && std::isfinite(xyz[1]) && std::isfinite(xyz[2]) && p.max_imag() == 0.0) {
                    index[static_cast<std::size_t>(i) * spec.cols + j] = mesh.vertices.size();
                    mesh.vertices.push_back({u, v, p});
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::singular_point && e.kind() != ErrorKind::domain &&
                    e.kind() != ErrorKind::non_finite)
                    throw;
            }
        }
    }
    for (int i = 0; i + 1 < spec.rows; ++i) {
        for (int j = 0; j + 1 < spec.cols; ++j) {
            const std::size_t cols = static_cast<std::size_t>(spec.cols);
            const std::array<std::size_t, 4> quad = {index[i * cols + j], index[i * cols + j + 1],
                                                     index[(i + 1) * cols + j + 1], index[(i + 1) * cols + j]};
            if (std::find(quad.begin(), quad.end(), missing) != quad.end())
                continue;
            if (detail::cell_contains_singularity(spec.surface_id, mesh.vertices[quad[0]].u,
                                                  mesh.vertices[quad[1]].u, mesh.vertices[quad[0]].v,
                                                  mesh.vertices[quad[3]].v))
                continue;
            mesh.faces.push_back(quad);
        }
    }
    if (mesh.faces.empty())
        throw Error(ErrorKind::empty_mesh, "every grid cell is excluded; no faces to write");
    return mesh;
}

inline std::string mesh_text(const Mesh& mesh, MeshFormat format)
{
    std::string out;
    if (format == MeshFormat::csv) {
        out += "re,im,x,y,z\n";
        for (const auto& v : mesh.vertices) {
            out += format_number(v.u) + "," + format_number(v.v) + "," + format_number(v.point.x.re()) + "," +
                   format_number(v.point.y.re()) + "," + format_number(v.point.z.re()) + "\n";
        }
        return out;
    }
    for (const auto& v : mesh.vertices)
        out += "v " + format_point(v.point) + "\n";
    for (const auto& f : mesh.faces) {
        out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " + std::to_string(f[2] + 1) +
               " " + std::to_string(f[3] + 1) + "\n";
    }
    return out;
}

inline void run_mesh(const MeshSpec& spec)
{
    write_text(spec.output_path, mesh_text(build_mesh(spec), spec.format));
}

} // namespace minsurf::cli
