// Command-line front end wiring the solver, the certificate checker, and the
// level-set diagnostics to subcommands. Setting precedence for the solver
// knobs: built-in default, then config file, then flag.
#include "lgp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lgp/anisotropy.hpp"
#include "lgp/certify.hpp"
#include "lgp/core.hpp"
#include "lgp/fields.hpp"
#include "lgp/grid.hpp"
#include "lgp/levelset.hpp"
#include "lgp/operators.hpp"
#include "lgp/scenarios.hpp"
#include "lgp/solver.hpp"

namespace lgp {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Inputs shared by the subcommands that consume saved fields. The grid is
// rebuilt from the u header: the padded rectangle is n + 2 cells wide.
struct Workspace {
    Scenario scenario;
    Raster raster;
    MetricIntegrand metric;
};

Workspace open_workspace(const std::string& name, const std::string& u_path) {
    Workspace w;
    w.scenario = get_scenario(name);
    FieldHeader hdr = peek_field_header(u_path);
    w.raster = rasterize_scenario(w.scenario, hdr.nx - 2);
    w.metric = scenario_metric(w.scenario, w.raster.grid);
    return w;
}

// The dual components are stored unmasked so every slot, live or dead, reads
// back as a finite number.
VectorField load_dual(const DomainGrid& grid, const std::string& zx_path,
                      const std::string& zy_path) {
    VectorField z(grid.nx, grid.ny);
    z.x = load_field(zx_path, grid).v;
    z.y = load_field(zy_path, grid).v;
    return z;
}

int cmd_solve(const std::string& name, int n, int max_iters, double gap_tol,
              const std::string& out_dir, std::ostream& out) {
    Scenario s = get_scenario(name);
    Raster r = rasterize_scenario(s, n);
    MetricIntegrand m = scenario_metric(s, r.grid);

    SolveConfig cfg;
    cfg.max_iters = max_iters;
    cfg.gap_tol = gap_tol;
    SolveReport rep = solve(m, r.grid, r.faces, cfg);

    fs::create_directories(out_dir);
    fs::path d(out_dir);
    save_field((d / "u.csv").string(), r.grid, rep.u);
    ScalarField zx(r.grid.nx, r.grid.ny), zy(r.grid.nx, r.grid.ny);
    zx.v = rep.z.x;
    zy.v = rep.z.y;
    save_field((d / "z_x.csv").string(), r.grid, zx, false);
    save_field((d / "z_y.csv").string(), r.grid, zy, false);
    save_pgm((d / "u.pgm").string(), r.grid, rep.u);

    std::ofstream rp(d / "report.txt");
    rp << std::setprecision(17);
    rp << "scenario=" << name << "\n";
    rp << "n=" << n << "\n";
    rp << "h=" << r.grid.h << "\n";
    rp << "iters=" << rep.iters_used << "\n";
    rp << "converged=" << (rep.converged ? 1 : 0) << "\n";
    rp << "primal=" << rep.primal << "\n";
    rp << "dual=" << rep.dual << "\n";
    rp << "gap=" << rep.gap << "\n";
    rp << "rel_gap=" << rep.rel_gap << "\n";

    out << "scenario=" << name << " n=" << n << " iters=" << rep.iters_used
        << " converged=" << (rep.converged ? 1 : 0) << " primal=" << rep.primal
        << " gap=" << rep.gap << "\n";
    return rep.converged ? 0 : 1;
}

int cmd_certify(const std::string& name, const std::string& u_path,
                const std::string& zx_path, const std::string& zy_path,
                std::ostream& out) {
    Workspace w = open_workspace(name, u_path);
    ScalarField u = load_field(u_path, w.raster.grid);
    VectorField z = load_dual(w.raster.grid, zx_path, zy_path);
    Tolerances tols = Tolerances::grid_default(w.raster.grid.h);
    CalibrationReport rep =
        verify_calibration(w.metric, w.raster.grid, w.raster.faces, u, z, tols);

    out << "pass=" << (rep.pass ? 1 : 0) << "\n";
    out << "r_div=" << rep.r_div << "\n";
    out << "r_feas=" << rep.r_feas << "\n";
    out << "r_pair=" << rep.r_pair << "\n";
    out << "r_sign=" << rep.r_sign << "\n";
    out << "r_neumann=" << rep.r_neumann << "\n";
    out << "primal=" << rep.primal << "\n";
    out << "dual=" << rep.dual << "\n";
    out << "gap=" << rep.gap << "\n";
    out << "jumped_faces=" << rep.jumped_faces << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_levelsets(const std::string& name, const std::string& u_path,
                  const std::string& levels_str, const std::string& out_dir,
                  std::ostream& out) {
    Workspace w = open_workspace(name, u_path);
    ScalarField u = load_field(u_path, w.raster.grid);

    std::vector<double> levels;
    std::stringstream ls(levels_str);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) levels.push_back(std::stod(tok));
    }
    if (levels.empty()) throw Error(Errc::config, "no level values given");

    auto curves = extract_levelsets(w.raster.grid, u, levels);
    fs::create_directories(out_dir);
    std::ofstream cs(fs::path(out_dir) / "levels.csv");
    cs << std::setprecision(17);
    cs << "# t, polyline_id, x, y\n";
    size_t rows = 0;
    for (const auto& c : curves) {
        int id = 0;
        for (const auto& pl : c.polylines) {
            for (const auto& p : pl.pts) {
                cs << c.t << ", " << id << ", " << p.x << ", " << p.y << "\n";
                ++rows;
            }
            ++id;
        }
    }
    out << "levels=" << curves.size() << " rows=" << rows << "\n";
    return 0;
}

int cmd_scan(const std::string& name, const std::string& u_path, std::ostream& out) {
    Workspace w = open_workspace(name, u_path);
    ScalarField u = load_field(u_path, w.raster.grid);
    ScanConfig cfg;
    cfg.exclusion_points = w.scenario.exclusion_points;
    ContinuityReport rep = continuity_scan(w.raster.grid, w.raster.faces, u, cfg);
    out << "trace_err=" << rep.trace_err << "\n";
    out << "hotspot_thresh=" << rep.hotspot_thresh << "\n";
    out << "hotspots=" << rep.hotspots.size() << "\n";
    return 0;
}

int cmd_gap(const std::string& name, const std::string& u_path,
            const std::string& zx_path, const std::string& zy_path,
            std::ostream& out) {
    Workspace w = open_workspace(name, u_path);
    ScalarField u = load_field(u_path, w.raster.grid);
    VectorField z = load_dual(w.raster.grid, zx_path, zy_path);
    Stencil st(w.raster.grid, w.raster.faces);
    double primal = primal_objective(w.metric, st, u);
    double dual = dual_objective(st, z);
    out << "primal=" << primal << "\n";
    out << "dual=" << dual << "\n";
    out << "gap=" << (primal - dual) << "\n";
    return 0;
}

int cmd_list(std::ostream& out) {
    for (const auto& name : scenario_names()) {
        Scenario s = get_scenario(name);
        out << name << "  " << s.description << "\n";
    }
    return 0;
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::io, "config line without '=': " + line);
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw Error(Errc::io, "config line without key: " + line);
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        // The config file must be read before the parser is built so that flag
        // values, which CLI11 assigns on top of the bound variables, override
        // the file values.
        std::string config_path;
        for (size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size())
                config_path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                config_path = args[i].substr(9);
        }
        int n = 64;
        int max_iters = 20000;
        double gap_tol = 1e-5;
        if (!config_path.empty()) {
            auto cfg = parse_config_file(config_path);
            if (auto it = cfg.find("n"); it != cfg.end()) n = std::stoi(it->second);
            if (auto it = cfg.find("max_iters"); it != cfg.end())
                max_iters = std::stoi(it->second);
            if (auto it = cfg.find("gap_tol"); it != cfg.end())
                gap_tol = std::stod(it->second);
        }

        CLI::App app{"least gradient solver and certificate checker"};
        app.require_subcommand(1);

        std::string scenario, u_path, zx_path, zy_path, out_dir;
        std::string levels = "0.5";
        std::string config_opt;

        auto* c_solve = app.add_subcommand("solve", "run the solver and save u, z, and a report");
        c_solve->add_option("--scenario", scenario, "scenario name")->required();
        c_solve->add_option("--n", n, "cells across the bounding box");
        c_solve->add_option("--max-iters", max_iters, "iteration cap");
        c_solve->add_option("--gap-tol", gap_tol, "relative duality gap target");
        c_solve->add_option("--config", config_opt, "key = value defaults file");
        c_solve->add_option("--out", out_dir, "output directory")->required();

        auto* c_certify = app.add_subcommand("certify", "check a saved (u, z) pair as an optimality certificate");
        c_certify->add_option("--scenario", scenario, "scenario name")->required();
        c_certify->add_option("--u", u_path, "primal field CSV")->required();
        c_certify->add_option("--zx", zx_path, "dual x component CSV")->required();
        c_certify->add_option("--zy", zy_path, "dual y component CSV")->required();

        auto* c_levels = app.add_subcommand("levelsets", "extract level curves of a saved field");
        c_levels->add_option("--scenario", scenario, "scenario name")->required();
        c_levels->add_option("--u", u_path, "primal field CSV")->required();
        c_levels->add_option("--levels", levels, "comma separated level values");
        c_levels->add_option("--out", out_dir, "output directory")->required();

        auto* c_scan = app.add_subcommand("scan", "boundary trace and oscillation scan of a saved field");
        c_scan->add_option("--scenario", scenario, "scenario name")->required();
        c_scan->add_option("--u", u_path, "primal field CSV")->required();

        auto* c_gap = app.add_subcommand("gap", "primal and dual objectives of saved fields");
        c_gap->add_option("--scenario", scenario, "scenario name")->required();
        c_gap->add_option("--u", u_path, "primal field CSV")->required();
        c_gap->add_option("--zx", zx_path, "dual x component CSV")->required();
        c_gap->add_option("--zy", zy_path, "dual y component CSV")->required();

        auto* c_list = app.add_subcommand("list", "list the built-in scenarios");

        try {
            std::vector<std::string> rev(args.rbegin(), args.rend());
            app.parse(rev);
        } catch (const CLI::ParseError& e) {
            int rc = app.exit(e, out, err);
            return rc == 0 ? 0 : 2;
        }

        if (app.got_subcommand(c_solve))
            return cmd_solve(scenario, n, max_iters, gap_tol, out_dir, out);
        if (app.got_subcommand(c_certify))
            return cmd_certify(scenario, u_path, zx_path, zy_path, out);
        if (app.got_subcommand(c_levels))
            return cmd_levelsets(scenario, u_path, levels, out_dir, out);
        if (app.got_subcommand(c_scan)) return cmd_scan(scenario, u_path, out);
        if (app.got_subcommand(c_gap))
            return cmd_gap(scenario, u_path, zx_path, zy_path, out);
        if (app.got_subcommand(c_list)) return cmd_list(out);
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::numerical ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace lgp
