// Experiment runner for the supragrid library.
//
//   supragrid solve       --lambda 10 --n 80 --grid analytic --beta 0.25 --out sol.csv
//   supragrid convergence --grid uniform --ladder 10,20,40,80
//   supragrid adapt       --n 20 --alpha 1e4 --beta 0.25 --trace trace.csv
//   supragrid table1 | table2 | error-profile
//
// Any subcommand accepts --config FILE with key=value lines (e.g. `lambda = 10`);
// those pre-populate flags and explicit flags win.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "supragrid/supragrid.hpp"

namespace fs = std::filesystem;
using namespace supragrid;

namespace {

constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct Options {
    double lambda = 10.0;
    double ell = 1.0;
    std::size_t n = 20;
    std::size_t profile_n = 80;
    std::vector<std::size_t> ladder{kTable1Ladder.begin(), kTable1Ladder.end()};
    std::string grid = "uniform";
    double alpha = 0.0;
    double beta = 0.25;
    std::string sampling = "midpoint";
    double tol = 1e-12;
    std::size_t max_iter = 10000;
    double eps = 1e-10;
    std::size_t max_outer = 2000;
    double relaxation = 1.0;
    std::size_t retries = 3;
    std::string out;
    std::string grid_out;
    std::string trace;
    bool serial = false;
};

/// Resolves an output path; relative paths land in $SUPRAGRID_OUTPUT_DIR when it is set.
std::optional<fs::path> output_path(const std::string& requested, const std::string& fallback_name) {
    const char* dir = std::getenv("SUPRAGRID_OUTPUT_DIR");
    if (requested.empty()) {
        if (dir == nullptr || *dir == '\0') return std::nullopt;
        return fs::path(dir) / fallback_name;
    }
    fs::path p(requested);
    if (p.is_relative() && dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
    return p;
}

template <typename Writer>
void write_file(const std::optional<fs::path>& path, Writer&& writer) {
    if (!path) return;
    if (path->has_parent_path()) fs::create_directories(path->parent_path());
    std::ofstream out(*path);
    if (!out) throw std::runtime_error("cannot open " + path->string() + " for writing");
    writer(out);
    std::cerr << "wrote " << path->string() << '\n';
}

MonitorSampling parse_sampling(const std::string& s) {
    return s == "cell-average" ? MonitorSampling::CellAverage : MonitorSampling::Midpoint;
}

AdaptiveConfig adaptive_config(const Options& o) {
    AdaptiveConfig cfg;
    cfg.alpha = o.alpha;
    cfg.beta = o.beta;
    cfg.eps = o.eps;
    cfg.max_outer = o.max_outer;
    cfg.relaxation = o.relaxation;
    cfg.relaxation_retries = o.retries;
    cfg.inner = {o.tol, o.max_iter};
    return cfg;
}

struct GridRun {
    DiscreteSolution solution;
    bool converged = true;
    std::optional<AdaptiveResult> adaptive;
};

/// Builds the grid for the configured mode and solves on it.
GridRun run_mode(const Options& o, const ProblemSpec& spec, std::size_t n) {
    if (o.grid == "uniform") {
        return {solve_bvp(uniform_grid(spec, n), spec), true, std::nullopt};
    }
    if (o.grid == "analytic") {
        const MappingSpec map = MappingSpec::power_monitor(spec, o.beta);
        if (map.decay_underflows()) {
            std::cerr << "warning: exp(-beta*lambda*ell) underflows; left end point pinned to 0\n";
        }
        return {solve_bvp(analytic_mapped_grid(map, n), spec), true, std::nullopt};
    }
    if (o.grid == "equidistributed") {
        const auto monitor = MonitorFunction::exact_power(spec, o.beta, parse_sampling(o.sampling));
        const EquidistResult eq = equidistribute(monitor, spec, n, {o.tol, o.max_iter});
        std::cerr << "equidistribution: " << eq.iterations << " sweeps, defect " << eq.equidist_defect << '\n';
        return {solve_bvp(eq.grid, spec), true, std::nullopt};
    }
    AdaptiveResult r = adaptive_solve(spec, n, adaptive_config(o));
    GridRun run{r.solution, r.converged, std::nullopt};
    run.adaptive = std::move(r);
    return run;
}

void add_problem_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--lambda", o.lambda, "model parameter lambda > 0")->capture_default_str();
    cmd->add_option("--ell", o.ell, "domain length ell > 0")->capture_default_str();
}

void add_grid_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--grid", o.grid, "grid mode")
        ->check(CLI::IsMember({"uniform", "analytic", "equidistributed", "adaptive"}))
        ->capture_default_str();
    cmd->add_option("--beta", o.beta, "monitor exponent beta >= 0")->capture_default_str();
    cmd->add_option("--alpha", o.alpha, "adaptive monitor weight alpha >= 0")->capture_default_str();
    cmd->add_option("--sampling", o.sampling, "interval sampling of the exact power monitor")
        ->check(CLI::IsMember({"midpoint", "cell-average"}))
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "equidistribution node-displacement tolerance")->capture_default_str();
    cmd->add_option("--max-iter", o.max_iter, "equidistribution sweep limit")->capture_default_str();
    cmd->add_option("--eps", o.eps, "adaptive stopping tolerance on the solution change")->capture_default_str();
    cmd->add_option("--max-outer", o.max_outer, "adaptive cycles per attempt")->capture_default_str();
    cmd->add_option("--relaxation", o.relaxation, "adaptive grid relaxation in (0, 1]")->capture_default_str();
    cmd->add_option("--retries", o.retries, "relaxation-halving restarts after non-convergence")
        ->capture_default_str();
}

/// Expands `--config FILE` into flags inserted before the user's own flags.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] != "--config") continue;
        if (i + 1 >= args.size()) throw CLI::ValidationError("--config", "requires a file name");
        const std::string file = args[i + 1];
        std::ifstream in(file);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + file);
        std::vector<std::string> injected;
        std::string line;
        for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = CLI::detail::trim_copy(line);
            if (trimmed.empty()) continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos) {
                throw CLI::ValidationError("--config", file + ":" + std::to_string(line_no) + ": expected key=value");
            }
            injected.push_back("--" + CLI::detail::trim_copy(trimmed.substr(0, eq)));
            injected.push_back(CLI::detail::trim_copy(trimmed.substr(eq + 1)));
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        // after the subcommand name (the first argument) so the flags bind to it
        const auto at = args.empty() ? args.begin() : args.begin() + 1;
        args.insert(at, injected.begin(), injected.end());
        --i;
    }
    return args;
}

int cmd_solve(const Options& o) {
    const ProblemSpec spec(o.lambda, o.ell);
    const GridRun run = run_mode(o, spec, o.n);
    std::printf("max_error = %.16e\n", max_error(run.solution));
    if (run.adaptive) {
        std::printf("n = %zu\nconverged = %s\nrelaxation = %g\n", run.adaptive->outer_iterations,
                    run.converged ? "yes" : "no", run.adaptive->relaxation);
        write_file(output_path(o.trace, "trace.csv"),
                   [&](std::ostream& out) { write_trace_csv(out, run.adaptive->trace); });
    }
    write_file(output_path(o.out, "solution.csv"), [&](std::ostream& out) { write_solution_csv(out, run.solution); });
    write_file(output_path(o.grid_out, "grid.csv"), [&](std::ostream& out) { write_grid_csv(out, run.solution.grid); });
    return run.converged ? 0 : kExitNotConverged;
}

int cmd_convergence(const Options& o) {
    const ProblemSpec spec(o.lambda, o.ell);
    ConvergenceReport report{o.grid == "uniform" ? "uniform" : o.grid + " beta=" + CLI::detail::to_string(o.beta), {}};
    bool converged = true;
    for (std::size_t n : o.ladder) {
        const GridRun run = run_mode(o, spec, n);
        converged = converged && run.converged;
        report.add(n, max_error(run.solution));
    }
    const std::vector<ConvergenceReport> reports{report};
    write_report_table(std::cout, reports);
    write_file(output_path(o.out, "convergence.csv"), [&](std::ostream& out) { write_report_csv(out, report); });
    return converged ? 0 : kExitNotConverged;
}

int cmd_table1(const Options& o) {
    const ProblemSpec spec(o.lambda, o.ell);
    const auto reports = run_table1(spec, o.ladder, kTable1Betas);
    write_report_table(std::cout, reports);
    write_file(output_path(o.out, "table1.csv"), [&](std::ostream& out) { write_table1_csv(out, reports); });
    return 0;
}

int cmd_table2(const Options& o) {
    const ProblemSpec spec(o.lambda, o.ell);
    const auto cells = run_table2(spec, o.n, kTable2Alphas, kTable2Betas, adaptive_config(o), !o.serial);
    write_table2_text(std::cout, cells, kTable2Betas);
    write_file(output_path(o.out, "table2.csv"), [&](std::ostream& out) { write_table2_csv(out, cells); });
    bool all = true;
    for (const auto& c : cells) all = all && c.converged;
    if (!all) std::cout << "(* = not converged)\n";
    return all ? 0 : kExitNotConverged;
}

int cmd_error_profile(const Options& o) {
    const ProblemSpec spec(o.lambda, o.ell);
    const auto points = run_error_profile(spec, o.profile_n, kTable1Betas);
    for (double beta : kTable1Betas) {
        const std::string label = monitor_label(beta);
        const ErrorProfilePoint* worst = nullptr;
        for (const auto& p : points) {
            if (p.label == label && (worst == nullptr || p.abs_error > worst->abs_error)) worst = &p;
        }
        std::printf("%-10s max abs error %.3e at x = %.4f\n", label.c_str(), worst->abs_error, worst->x);
    }
    write_file(output_path(o.out, "error_profile.csv"),
               [&](std::ostream& out) { write_error_profile_csv(out, points); });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Centered finite differences on equidistributed grids for -u'' + lambda^2 u = 0"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_help_all_flag("--help-all");

    Options o;
    int status = 0;

    auto* solve = app.add_subcommand("solve", "solve once and report the max-norm error");
    add_problem_flags(solve, o);
    add_grid_flags(solve, o);
    solve->add_option("--n", o.n, "number of intervals N")->capture_default_str();
    solve->add_option("--out", o.out, "solution CSV (x,u,u_exact,abs_error)");
    solve->add_option("--grid-out", o.grid_out, "grid CSV (x)");
    solve->add_option("--trace", o.trace, "adaptive trace CSV");

    auto* conv = app.add_subcommand("convergence", "error ladder and observed orders for one grid mode");
    add_problem_flags(conv, o);
    add_grid_flags(conv, o);
    conv->add_option("--ladder", o.ladder, "comma-separated N values, each double the previous")->delimiter(',');
    conv->add_option("--out", o.out, "report CSV (N,error,p)");

    auto* adapt = app.add_subcommand("adapt", "solution-adaptive grid with monitor 1 + alpha |u_x|^beta");
    add_problem_flags(adapt, o);
    add_grid_flags(adapt, o);
    adapt->add_option("--n", o.n, "number of intervals N")->capture_default_str();
    adapt->add_option("--out", o.out, "solution CSV");
    adapt->add_option("--grid-out", o.grid_out, "grid CSV (x)");
    adapt->add_option("--trace", o.trace, "trace CSV (n,error_norm,solution_change,grid_change)");

    auto* t1 = app.add_subcommand("table1", "convergence orders on the analytic power-monitor grids");
    add_problem_flags(t1, o);
    t1->add_option("--ladder", o.ladder, "comma-separated N values")->delimiter(',');
    t1->add_option("--out", o.out, "CSV (label,N,error,p)");

    auto* t2 = app.add_subcommand("table2", "adaptive sweep over alpha and beta");
    add_problem_flags(t2, o);
    add_grid_flags(t2, o);
    t2->add_option("--n", o.n, "number of intervals N")->capture_default_str();
    t2->add_option("--out", o.out, "CSV (alpha,beta,error,n,converged,relaxation,total_cycles)");
    t2->add_flag("--serial", o.serial, "run cells one after another");

    auto* prof = app.add_subcommand("error-profile", "pointwise errors on the four analytic grids");
    add_problem_flags(prof, o);
    prof->add_option("--n", o.profile_n, "number of intervals N")->capture_default_str();
    prof->add_option("--out", o.out, "CSV (x,abs_error,monitor_label)");

    solve->callback([&] { status = cmd_solve(o); });
    conv->callback([&] { status = cmd_convergence(o); });
    adapt->callback([&] {
        o.grid = "adaptive";
        status = cmd_solve(o);
    });
    t1->callback([&] { status = cmd_table1(o); });
    t2->callback([&] { status = cmd_table2(o); });
    prof->callback([&] { status = cmd_error_profile(o); });

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return status;
}
