#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minsurf/cli.hpp"

namespace {

using namespace minsurf;

std::vector<double> split_numbers(const std::string& text, std::size_t expected, const char* flag)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(piece, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != piece.size() || piece.empty())
            throw Error(ErrorKind::config_invalid, std::string(flag) + ": cannot parse '" + piece + "'");
        out.push_back(v);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (out.size() != expected) {
        throw Error(ErrorKind::config_invalid,
                    std::string(flag) + " expects " + std::to_string(expected) + " comma-separated numbers");
    }
    return out;
}

std::pair<int, int> parse_grid(const std::string& text)
{
    const std::size_t x = text.find_first_of("xX");
    if (x == std::string::npos)
        throw Error(ErrorKind::config_invalid, "--grid expects RxC");
    try {
        std::size_t u1 = 0, u2 = 0;
        const int rows = std::stoi(text.substr(0, x), &u1);
        const int cols = std::stoi(text.substr(x + 1), &u2);
        if (u1 == x && u2 == text.size() - x - 1)
            return {rows, cols};
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::config_invalid, "--grid expects RxC, got '" + text + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimal-surface series identities: verification, evaluation and mesh export"};
    app.require_subcommand(1);

    cli::VerifyConfig vc;
    std::string region_text;
    std::string mode_text = "corrected";
    std::string form_text = "printed";
    std::int64_t n_pairs = 0, m_fixed = 0, n_fixed = 0;
    auto* verify = app.add_subcommand("verify", "Check the identities on seeded samples and write a JSON report");
    verify->add_option("--identity", vc.identities, "Identities to check (1-4)")->delimiter(',');
    verify->add_option("--samples", vc.samples, "Samples per identity");
    verify->add_option("--seed", vc.seed, "Sampling seed");
    verify->add_option("--tol", vc.tol, "Residual tolerance");
    verify->add_option("--exclusion-radius", vc.exclusion_radius, "Distance kept from singular points");
    auto* n_pairs_opt = verify->add_option("--n-pairs", n_pairs, "Fixed number of series pairs");
    verify->add_option("--output", vc.report_path, "Report path (stdout when omitted)");
    verify->add_option("--region", region_text, "Sampling radii lo,hi");
    verify->add_option("--tail", mode_text, "Tail handling: corrected or plain")
        ->check(CLI::IsMember({"corrected", "plain"}));
    auto* plain_flag = verify->add_flag("--plain-tail", "Shorthand for --tail plain");
    verify->add_option("--form", form_text, "Identity 4 form: printed or half-angle")
        ->check(CLI::IsMember({"printed", "half-angle"}));
    verify->add_flag("--complex", vc.complex_pairs, "Sample identity 2 at complex (r, s)");
    auto* m_opt = verify->add_option("--m", m_fixed, "Fixed identity 4 offset m");
    auto* n_opt = verify->add_option("--n", n_fixed, "Fixed identity 4 offset n");

    std::string surface_text;
    std::vector<std::string> eval_args;
    double eval_radius = default_exclusion_radius;
    auto* eval = app.add_subcommand("eval", "Print the surface point x y z for one parameter");
    eval->add_option("--surface", surface_text, "scherk2, scherk1, helicoid, enneper or bi-soliton");
    eval->add_option("args", eval_args, "[surface] parameter(s), e.g. 0.3+0.5i");
    eval->add_option("--exclusion-radius", eval_radius, "Distance kept from singular points");

    cli::MeshSpec ms;
    std::string mesh_surface = "scherk2", grid_text = "16x16", mesh_region = "-0.5,0.5,-0.5,0.5", format_text = "obj";
    auto* mesh = app.add_subcommand("mesh", "Export a parameter grid as OBJ or CSV");
    mesh->add_option("--surface", mesh_surface, "Surface id");
    mesh->add_option("--grid", grid_text, "Grid size RxC");
    mesh->add_option("--region", mesh_region, "Parameter rectangle a,b,c,d");
    mesh->add_option("--format", format_text, "obj or csv")->check(CLI::IsMember({"obj", "csv"}));
    mesh->add_option("--output", ms.output_path, "Output path (stdout when omitted)");
    mesh->add_option("--exclusion-radius", ms.exclusion_radius, "Distance kept from singular points");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            if (*n_pairs_opt)
                vc.n_pairs_override = n_pairs;
            if (!region_text.empty()) {
                const auto r = split_numbers(region_text, 2, "--region");
                vc.region = std::make_pair(r[0], r[1]);
            }
            vc.mode = (*plain_flag || mode_text == "plain") ? TailMode::plain : TailMode::corrected;
            vc.form = form_text == "printed" ? Identity4Form::printed : Identity4Form::half_angle;
            if (*m_opt || *n_opt)
                vc.mn = std::make_pair(m_fixed, n_fixed);
            return cli::run_verify(vc);
        }
        if (eval->parsed()) {
            std::size_t first = 0;
            if (surface_text.empty()) {
                if (eval_args.empty())
                    throw Error(ErrorKind::config_invalid, "eval needs a surface id");
                surface_text = eval_args[0];
                first = 1;
            }
            const SurfaceId id = parse_surface_id(surface_text);
            std::vector<ComplexScalar> params;
            for (std::size_t k = first; k < eval_args.size(); ++k)
                params.push_back(cli::parse_complex(eval_args[k]));
            std::cout << cli::format_point(cli::evaluate_surface(id, params, eval_radius)) << "\n";
            return cli::exit_pass;
        }
        if (mesh->parsed()) {
            ms.surface_id = parse_surface_id(mesh_surface);
            std::tie(ms.rows, ms.cols) = parse_grid(grid_text);
            const auto r = split_numbers(mesh_region, 4, "--region");
            ms.region = {r[0], r[1], r[2], r[3]};
            ms.format = format_text == "csv" ? cli::MeshFormat::csv : cli::MeshFormat::obj;
            cli::run_mesh(ms);
            return cli::exit_pass;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_error;
    }
    return cli::exit_error;
}
