#pragma once

// Command-line front end. Exit codes: 0 success, 1 validation failure,
// 2 parse/IO/usage failure, 3 degenerate geometry.

#include "io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace diams::cli {

enum ExitCode : int { Success = 0, ValidationFailure = 1, UsageOrIo = 2, DegenerateGeometry = 3 };

inline int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::ValidationError:
    case ErrorKind::InadmissibleVertex: return ValidationFailure;
    case ErrorKind::ParseError:
    case ErrorKind::IoFailure:
    case ErrorKind::ParameterOutOfRange:
    case ErrorKind::OutOfRange:
    case ErrorKind::IndexOutOfDomain:
    case ErrorKind::SharedEdgeMismatch: return UsageOrIo;
    case ErrorKind::BoundaryVertex:
    case ErrorKind::DegenerateOrientation:
    case ErrorKind::DegenerateMetric:
    case ErrorKind::DegenerateGeometry:
    case ErrorKind::DegenerateDirection:
    case ErrorKind::NonGenericCell: return DegenerateGeometry;
    }
    return UsageOrIo;
}

inline int exit_code_for(AnalysisStatus s) {
    switch (s) {
    case AnalysisStatus::Ok: return Success;
    case AnalysisStatus::ValidationFailed: return ValidationFailure;
    case AnalysisStatus::Degenerate: return DegenerateGeometry;
    }
    return UsageOrIo;
}

namespace detail {

inline ConormalNet load_net(const std::string &path) { return to_net(parse_curves(read_file(path))); }

inline void print_summary(const Analysis &a, std::ostream &out) {
    out << a.edges.size() << " singular edges, " << a.polylines.size() << " singular polylines\n";
    for (const auto &sv : a.vertices) {
        if (sv.configuration == Configuration::Boundary) continue;
        out << "vertex " << to_string(sv.vertex) << ": configuration " << to_string(sv.configuration)
            << ", " << to_string(sv.kind) << '\n';
    }
}

} // namespace detail

inline int run_cli(int argc, const char *const *argv, std::ostream &out = std::cout,
                   std::ostream &err = std::cerr) {
    CLI::App app{"Singularities of discrete indefinite affine minimal surfaces", "diams"};
    app.require_subcommand(1);

    std::string curves, report, obj_out, singular = "mark", pair_name, example_out;
    double tol = kDefaultSignTol, y = 1.0, du = 0.1, dv = 0.1, trace_tol = 1e-12;
    int subdiv = 8, grid = 65;

    auto *analyze_cmd = app.add_subcommand("analyze", "Detect and classify the singular set");
    analyze_cmd->add_option("--curves", curves, "Curve pair JSON")->required();
    analyze_cmd->add_option("--report", report, "Report JSON to write")->required();
    analyze_cmd->add_option("--tol", tol, "Relative tolerance for sign predicates")
        ->check(CLI::PositiveNumber);

    auto *mesh_cmd = app.add_subcommand("mesh", "Tessellate the bilinear interpolation as OBJ");
    mesh_cmd->add_option("--curves", curves, "Curve pair JSON")->required();
    mesh_cmd->add_option("--out", obj_out, "OBJ file to write")->required();
    mesh_cmd->add_option("--subdiv", subdiv, "Samples per quadrangle side")
        ->required()
        ->check(CLI::PositiveNumber);
    mesh_cmd->add_option("--singular", singular, "Singular chains: mark or none")
        ->check(CLI::IsMember({"mark", "none"}));
    mesh_cmd->add_option("--tol", tol, "Relative tolerance for sign predicates")
        ->check(CLI::PositiveNumber);

    auto *validate_cmd = app.add_subcommand("validate", "Check generic position, metric and admissibility");
    validate_cmd->add_option("--curves", curves, "Curve pair JSON")->required();
    validate_cmd->add_option("--tol", tol, "Relative tolerance")->check(CLI::PositiveNumber);

    auto *example_cmd = app.add_subcommand("example", "Write the four-quadrangle example curve pair");
    example_cmd->add_option("--y", y, "y-coordinate of beta(-1) before scaling")->required();
    example_cmd->add_option("--du", du, "alpha step")->check(CLI::PositiveNumber);
    example_cmd->add_option("--dv", dv, "beta step")->check(CLI::PositiveNumber);
    example_cmd->add_option("--out", example_out, "Curve pair JSON to write")->required();

    auto *oracle_cmd = app.add_subcommand("oracle", "Trace a built-in smooth pair");
    oracle_cmd->add_option("--pair", pair_name, "identity, parabolic or symmetric")
        ->required()
        ->check(CLI::IsMember(smooth::builtin_pair_names()));
    oracle_cmd->add_option("--grid", grid, "Cells per side")->check(CLI::Range(16, 1 << 14));
    oracle_cmd->add_option("--report", report, "Report JSON to write")->required();
    oracle_cmd->add_option("--tol", trace_tol, "|Omega| tolerance for traced points")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return Success;
        }
        err << "error: " << e.what() << '\n';
        const CLI::App *sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return UsageOrIo;
    }

    AnalysisOptions opt;
    opt.sign_tol = tol;

    try {
        if (*analyze_cmd) {
            const auto net = detail::load_net(curves);
            const auto a = analyze(net, opt);
            write_file(report, write_report(build_report(net, a, opt)));
            detail::print_summary(a, out);
            if (a.status != AnalysisStatus::Ok) err << "error: " << a.message << '\n';
            return exit_code_for(a.status);
        }
        if (*mesh_cmd) {
            const auto net = detail::load_net(curves);
            std::vector<SingularPolyline> chains;
            AsymptoticNet f = integrate_net(net);
            if (singular == "mark") {
                auto a = analyze(net, opt);
                if (a.status != AnalysisStatus::Ok) {
                    err << "error: " << a.message << '\n';
                    return exit_code_for(a.status);
                }
                chains = std::move(a.polylines);
            }
            const auto mesh = tessellate(f, subdiv, chains);
            export_obj(mesh, obj_out);
            out << mesh.vertices.size() << " vertices, " << mesh.triangles.size() << " triangles, "
                << mesh.polylines.size() << " singular chains\n";
            return Success;
        }
        if (*validate_cmd) {
            const auto net = detail::load_net(curves);
            const auto a = analyze(net, opt);
            for (const auto &g : a.generic_position)
                out << "generic position: planes through " << to_string(g.first) << " and "
                    << to_string(g.second) << " coincide at vertex " << to_string(g.vertex) << '\n';
            for (const auto &q : a.degenerate_quads)
                out << "degenerate metric: Omega vanishes on quad " << to_string(q) << '\n';
            for (const auto &p : a.admissibility)
                out << "admissibility: forbidden configuration at vertex " << to_string(p) << '\n';
            if (a.status == AnalysisStatus::Ok) out << "ok\n";
            else err << "error: " << a.message << '\n';
            return exit_code_for(a.status);
        }
        if (*example_cmd) {
            write_file(example_out, write_curves(example_curve_pair(y, du, dv)));
            return Success;
        }
        if (*oracle_cmd) {
            const auto pair = *smooth::builtin_pair(pair_name);
            const auto rep = build_oracle_report(pair, grid, trace_tol);
            write_file(report, write_report(rep));
            out << rep["polylines"].size() << " chains, " << rep["vertices"].size()
                << " swallowtail candidates\n";
            return Success;
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return UsageOrIo;
}

} // namespace diams::cli
