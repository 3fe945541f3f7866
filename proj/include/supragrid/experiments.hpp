#pragma once

/**
 * @file experiments.hpp
 * @brief Reproducible experiment drivers: convergence tables, adaptive sweeps, error profiles
 */

#include <array>
#include <cstddef>
#include <cstdio>
#include <future>
#include <ostream>
#include <string>
#include <vector>

#include "supragrid/adapt.hpp"
#include "supragrid/analysis.hpp"
#include "supragrid/csv.hpp"
#include "supragrid/grid.hpp"
#include "supragrid/solver.hpp"

namespace supragrid {

inline constexpr std::array<std::size_t, 7> kTable1Ladder{10, 20, 40, 80, 160, 320, 640};
inline constexpr std::array<double, 4> kTable1Betas{0.0, 0.25, 0.5, 2.0};
inline constexpr std::array<double, 9> kTable2Alphas{0.0, 0.1, 0.5, 1.0, 2.0, 10.0, 1e2, 1e3, 1e4};
inline constexpr std::array<double, 5> kTable2Betas{0.125, 0.25, 0.5, 1.0, 2.0};

/// "uniform" for beta = 0, otherwise "beta=<value>".
inline std::string monitor_label(double beta) {
    if (beta == 0.0) return "uniform";
    char buf[32];
    std::snprintf(buf, sizeof buf, "beta=%g", beta);
    return buf;
}

/// One convergence report per beta, each on the analytic power-monitor grids.
inline std::vector<ConvergenceReport> run_table1(const ProblemSpec& spec, std::span<const std::size_t> ladder,
                                                 std::span<const double> betas) {
    std::vector<ConvergenceReport> reports;
    for (double beta : betas) {
        const MappingSpec map = MappingSpec::power_monitor(spec, beta);
        reports.push_back(convergence_study(monitor_label(beta), ladder, spec,
                                            [&](std::size_t n) { return analytic_mapped_grid(map, n); }));
    }
    return reports;
}

/// Long-format CSV: label,N,error,p.
inline void write_table1_csv(std::ostream& out, std::span<const ConvergenceReport> reports) {
    csv::Table table{{"label", "N", "error", "p"}, {}};
    for (const auto& r : reports) {
        for (const auto& row : r.rows) {
            table.rows.push_back({r.label, std::to_string(row.n), csv::format_real(row.error),
                                  row.order ? csv::format_real(*row.order) : std::string{}});
        }
    }
    csv::write(out, table);
}

struct Table2Cell {
    double alpha;
    double beta;
    double error;
    std::size_t n;
    bool converged;
    double relaxation;
    std::size_t total_cycles;
};

/**
 * Adaptive solves for every (alpha, beta) pair. Cells run as independent tasks;
 * the result is ordered alpha-major regardless of completion order.
 */
inline std::vector<Table2Cell> run_table2(const ProblemSpec& spec, std::size_t n, std::span<const double> alphas,
                                          std::span<const double> betas, const AdaptiveConfig& base,
                                          bool parallel = true) {
    std::vector<std::future<Table2Cell>> pending;
    for (double alpha : alphas) {
        for (double beta : betas) {
            AdaptiveConfig cfg = base;
            cfg.alpha = alpha;
            cfg.beta = beta;
            pending.push_back(std::async(parallel ? std::launch::async : std::launch::deferred, [spec, n, cfg] {
                const AdaptiveResult r = adaptive_solve(spec, n, cfg);
                return Table2Cell{cfg.alpha, cfg.beta, r.error_norm, r.outer_iterations, r.converged, r.relaxation,
                                  r.total_cycles};
            }));
        }
    }
    std::vector<Table2Cell> cells;
    cells.reserve(pending.size());
    for (auto& f : pending) cells.push_back(f.get());
    return cells;
}

inline void write_table2_csv(std::ostream& out, std::span<const Table2Cell> cells) {
    csv::Table table{{"alpha", "beta", "error", "n", "converged", "relaxation", "total_cycles"}, {}};
    for (const auto& c : cells) {
        table.rows.push_back({csv::format_real(c.alpha), csv::format_real(c.beta), csv::format_real(c.error),
                              std::to_string(c.n), c.converged ? "1" : "0", csv::format_real(c.relaxation),
                              std::to_string(c.total_cycles)});
    }
    csv::write(out, table);
}

/// Rows alpha, column pairs (error, n) per beta. `*` marks a non-converged cell, `r` a relaxed one.
inline void write_table2_text(std::ostream& out, std::span<const Table2Cell> cells, std::span<const double> betas) {
    char buf[64];
    out << "   alpha";
    for (double b : betas) {
        std::snprintf(buf, sizeof buf, " | beta = %-12g", b);
        out << buf;
    }
    out << '\n';
    for (std::size_t i = 0; i < cells.size(); i += betas.size()) {
        std::snprintf(buf, sizeof buf, "%8g", cells[i].alpha);
        out << buf;
        for (std::size_t k = 0; k < betas.size(); ++k) {
            const Table2Cell& c = cells[i + k];
            const char* mark = !c.converged ? "*" : (c.relaxation < 1.0 ? "r" : " ");
            std::snprintf(buf, sizeof buf, " | %9.2e %5zu%s", c.error, c.n, mark);
            out << buf;
        }
        out << '\n';
    }
}

struct ErrorProfilePoint {
    double x;
    double abs_error;
    std::string label;
};

/// Pointwise |u_j - u(x_j)| on the analytic grid of each beta.
inline std::vector<ErrorProfilePoint> run_error_profile(const ProblemSpec& spec, std::size_t n,
                                                        std::span<const double> betas) {
    std::vector<ErrorProfilePoint> points;
    for (double beta : betas) {
        const DiscreteSolution sol = solve_bvp(analytic_mapped_grid(MappingSpec::power_monitor(spec, beta), n), spec);
        const std::vector<double> err = sol.abs_errors();
        for (std::size_t j = 0; j < err.size(); ++j) {
            points.push_back({sol.grid.node(j), err[j], monitor_label(beta)});
        }
    }
    return points;
}

inline void write_error_profile_csv(std::ostream& out, std::span<const ErrorProfilePoint> points) {
    csv::Table table{{"x", "abs_error", "monitor_label"}, {}};
    for (const auto& p : points) {
        table.rows.push_back({csv::format_real(p.x), csv::format_real(p.abs_error), p.label});
    }
    csv::write(out, table);
}

}  // namespace supragrid
