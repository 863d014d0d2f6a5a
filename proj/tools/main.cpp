// gdicke — command-line front end: single-point solves, λ/θ sweeps,
// transition location and finite-j convergence tables.
//
// Exit codes: 0 success, 2 validation error, 3 solver failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "gdicke/sweep.hpp"
#include "gdicke/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct CommonOpts {
    double omega = 1.0;
    double Omega = 1.0;
    double theta = 0.0;
    double theta_deg = 0.0;
    bool has_theta_deg = false;
    double lambda = 0.0;
    std::string format = "csv";
    std::string out_path;
};

void add_model_flags(CLI::App* cmd, CommonOpts& opts, bool with_lambda = true) {
    cmd->add_option("--omega", opts.omega, "boson frequency (> 0)");
    cmd->add_option("--Omega", opts.Omega, "spin frequency (>= 0)");
    auto* theta = cmd->add_option("--theta", opts.theta, "coupling angle in radians, [0, pi]");
    auto* theta_deg =
        cmd->add_option("--theta-deg", opts.theta_deg, "coupling angle in degrees, [0, 180]");
    theta->excludes(theta_deg);
    theta_deg->excludes(theta);
    if (with_lambda) cmd->add_option("--lambda", opts.lambda, "coupling strength (>= 0)");
}

void add_output_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out_path, "output path (default: stdout)");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

gdicke::CanonicalParams params_from(const CommonOpts& opts) {
    double theta = opts.has_theta_deg ? opts.theta_deg * std::numbers::pi / 180.0 : opts.theta;
    return gdicke::CanonicalParams{opts.omega, opts.Omega, gdicke::snap_theta(theta),
                                   opts.lambda};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output path: " + out_path);
    out << text;
    if (!out) throw std::runtime_error("failed writing output path: " + out_path);
}

json row_json(const gdicke::SweepRow& row) {
    return json{{"theta", row.theta},
                {"lambda", row.lambda},
                {"branch", gdicke::to_string(row.branch)},
                {"x_a", row.x_a},
                {"x_b", row.x_b},
                {"eps_minus", row.eps_minus},
                {"eps_plus", row.eps_plus},
                {"e_g", row.e_g},
                {"jz_per_j", row.jz_per_j},
                {"photons_per_j", row.photons_per_j}};
}

json params_json(const gdicke::CanonicalParams& p) {
    return json{{"omega", p.omega}, {"Omega", p.Omega}, {"theta", p.theta}, {"lambda", p.lambda}};
}

struct RangeSpec {
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;
};

RangeSpec parse_range(const std::string& text) {
    RangeSpec r;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.count, &extra) != 3)
        throw std::invalid_argument("range must be lo:hi:n, got '" + text + "'");
    return r;
}

int run_solve_cmd(const CommonOpts& opts) {
    const auto p = params_from(opts);
    const auto rows = gdicke::run_solve(p);
    if (opts.format == "json") {
        json doc{{"version", gdicke::kVersion}, {"params", params_json(p)}};
        for (const auto& row : rows) doc["branches"].push_back(row_json(row));
        emit(doc.dump(2) + "\n", opts.out_path);
    } else {
        emit(gdicke::solve_csv(rows, p), opts.out_path);
    }
    return kExitOk;
}

int run_sweep_cmd(const CommonOpts& opts, const std::string& axis, const std::string& range,
                  const std::string& outputs, int threads) {
    gdicke::SweepSpec spec;
    if (axis == "lambda")
        spec.axis = gdicke::SweepAxis::lambda;
    else if (axis == "theta")
        spec.axis = gdicke::SweepAxis::theta;
    else
        throw std::invalid_argument("axis must be lambda or theta");

    const auto r = parse_range(range);
    spec.lo = r.lo;
    spec.hi = r.hi;
    spec.count = r.count;
    spec.fixed = params_from(opts);
    spec.threads = threads;

    if (outputs == "displacements")
        spec.outputs = gdicke::OutputSet::displacements;
    else if (outputs == "excitations")
        spec.outputs = gdicke::OutputSet::excitations;
    else if (outputs == "observables")
        spec.outputs = gdicke::OutputSet::observables;
    else if (outputs == "all")
        spec.outputs = gdicke::OutputSet::all;
    else
        throw std::invalid_argument("outputs must be displacements|excitations|observables|all");

    const auto rows = gdicke::run_sweep(spec);
    if (opts.format == "json") {
        json doc{{"version", gdicke::kVersion},
                 {"axis", axis},
                 {"range", {{"lo", spec.lo}, {"hi", spec.hi}, {"count", spec.count}}},
                 {"fixed", params_json(spec.fixed)}};
        doc["rows"] = json::array();
        for (const auto& row : rows) doc["rows"].push_back(row_json(row));
        emit(doc.dump(2) + "\n", opts.out_path);
    } else {
        emit(gdicke::sweep_csv(rows, spec), opts.out_path);
    }
    return kExitOk;
}

int run_critical_cmd(const CommonOpts& opts) {
    const auto p = params_from(opts);
    const auto lambda_star = gdicke::locate_transition(p.omega, p.Omega, p.theta);
    if (opts.format == "json") {
        json doc{{"version", gdicke::kVersion},
                 {"omega", p.omega},
                 {"Omega", p.Omega},
                 {"theta", p.theta},
                 {"lambda_star", lambda_star ? json(*lambda_star) : json(nullptr)}};
        emit(doc.dump(2) + "\n", opts.out_path);
    } else {
        char buf[64];
        if (lambda_star)
            std::snprintf(buf, sizeof(buf), "%.17g\n", *lambda_star);
        else
            std::snprintf(buf, sizeof(buf), "none\n");
        emit(buf, opts.out_path);
    }
    return kExitOk;
}

int run_ed_cmd(const CommonOpts& opts, const std::vector<double>& j_values, int n_max,
               bool n_max_auto) {
    gdicke::EdSpec spec;
    spec.params = params_from(opts);
    spec.j_values = j_values;
    if (!n_max_auto) {
        if (n_max < 0) throw std::invalid_argument("pass --nmax N or --nmax-auto");
        spec.n_max = n_max;
    }
    spec.options.convergence_check = true;
    // convergence tables legitimately exceed the default dense guard
    spec.options.entry_limit = 200'000'000;

    const auto table = gdicke::run_ed(spec);
    if (opts.format == "json") {
        json doc{{"version", gdicke::kVersion}, {"params", params_json(spec.params)}};
        doc["rows"] = json::array();
        for (const auto& row : table.rows) {
            doc["rows"].push_back(json{{"j", row.j},
                                       {"n_max", row.n_max},
                                       {"E0_per_j", row.e0_per_j},
                                       {"gs_jz_per_j", row.gs_jz_per_j},
                                       {"gs_photons_per_j", row.gs_photons_per_j},
                                       {"gs_parity", row.gs_parity},
                                       {"parity_comm_norm", row.parity_comm_norm},
                                       {"converged", row.converged}});
        }
        const auto& td = table.td_reference;
        doc["td_reference"] = json{{"e_g", td.e_g},
                                   {"jz_per_j", td.jz_per_j},
                                   {"photons_per_j", td.photons_per_j},
                                   {"eps_minus", td.eps_minus},
                                   {"eps_plus", td.eps_plus}};
        emit(doc.dump(2) + "\n", opts.out_path);
    } else {
        emit(gdicke::ed_csv(table, spec), opts.out_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermodynamic-limit and exact-diagonalization solver for the "
                 "generalized single-mode Dicke Hamiltonian"};
    app.set_version_flag("--version", gdicke::kVersion);
    app.require_subcommand(1);

    CommonOpts solve_opts, sweep_opts, critical_opts, ed_opts;

    auto* solve_cmd = app.add_subcommand("solve", "solve one parameter point");
    add_model_flags(solve_cmd, solve_opts);
    add_output_flags(solve_cmd, solve_opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "sweep lambda or theta on a grid");
    std::string axis = "lambda", range = "0:1:101", outputs = "all";
    int threads = 0;
    add_model_flags(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--axis", axis, "swept parameter")
        ->check(CLI::IsMember({"lambda", "theta"}))
        ->capture_default_str();
    sweep_cmd->add_option("--range", range, "grid as lo:hi:n")->capture_default_str();
    sweep_cmd->add_option("--outputs", outputs, "column set")
        ->check(CLI::IsMember({"displacements", "excitations", "observables", "all"}))
        ->capture_default_str();
    sweep_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    add_output_flags(sweep_cmd, sweep_opts);

    auto* critical_cmd =
        app.add_subcommand("critical", "locate the coupling where the gap closes");
    add_model_flags(critical_cmd, critical_opts, /*with_lambda=*/false);
    add_output_flags(critical_cmd, critical_opts);

    auto* ed_cmd = app.add_subcommand("ed", "finite-j exact-diagonalization table");
    std::vector<double> j_values;
    int n_max = -1;
    bool n_max_auto = false;
    add_model_flags(ed_cmd, ed_opts);
    ed_cmd->add_option("--j", j_values, "spin lengths, comma separated")
        ->delimiter(',')
        ->required();
    auto* nmax_opt = ed_cmd->add_option("--nmax", n_max, "Fock cutoff");
    auto* nmax_auto_opt =
        ed_cmd->add_flag("--nmax-auto", n_max_auto, "cutoff from the displacement estimate");
    nmax_opt->excludes(nmax_auto_opt);
    nmax_auto_opt->excludes(nmax_opt);
    add_output_flags(ed_cmd, ed_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitValidation;
    }

    solve_opts.has_theta_deg = solve_cmd->count("--theta-deg") > 0;
    sweep_opts.has_theta_deg = sweep_cmd->count("--theta-deg") > 0;
    critical_opts.has_theta_deg = critical_cmd->count("--theta-deg") > 0;
    ed_opts.has_theta_deg = ed_cmd->count("--theta-deg") > 0;

    try {
        if (solve_cmd->parsed()) return run_solve_cmd(solve_opts);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_opts, axis, range, outputs, threads);
        if (critical_cmd->parsed()) return run_critical_cmd(critical_opts);
        if (ed_cmd->parsed()) return run_ed_cmd(ed_opts, j_values, n_max, n_max_auto);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n(run 'gdicke --help' for usage)\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n(run 'gdicke --help' for usage)\n";
        return kExitValidation;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n(run 'gdicke --help' for usage)\n";
        return kExitValidation;
    } catch (const gdicke::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitValidation;
}
