#pragma once

/**
 * @file adapt.hpp
 * @brief Solution-adaptive grids with the monitor w = 1 + alpha |u_x|^beta
 *
 * Starting from the uniform grid, each cycle builds the monitor from the current
 * discrete solution, equidistributes it, and re-solves the boundary-value problem
 * on the new grid. The loop stops once ||u^{n+1} - u^n||_inf < eps, where the two
 * solutions are compared node index by node index even though they live on
 * different grids.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "supragrid/csv.hpp"
#include "supragrid/equidist.hpp"
#include "supragrid/grid.hpp"
#include "supragrid/solver.hpp"

namespace supragrid {

struct AdaptiveConfig {
    double alpha = 0.0;
    double beta = 0.0;
    double eps = 1e-10;            ///< stopping tolerance on the solution change
    std::size_t max_outer = 2000;  ///< remesh-resolve cycles per attempt
    /// Grid update x <- (1 - relaxation) x + relaxation G(x), 0 < relaxation <= 1.
    double relaxation = 1.0;
    /// After an attempt fails to converge, restart from the uniform grid with half
    /// the relaxation, at most this many times. Relaxation does not move the fixed point.
    std::size_t relaxation_retries = 3;
    EquidistOptions inner{};
};

struct AdaptiveTraceRow {
    std::size_t n;
    double error_norm;
    double solution_change;
    double grid_change;
};

struct AdaptiveResult {
    DiscreteSolution solution;
    std::size_t outer_iterations;  ///< remesh-resolve cycles of the returned attempt
    double error_norm;             ///< ||u_h - u||_inf against the exact solution
    bool converged;
    double relaxation;             ///< relaxation of the returned attempt
    std::size_t attempts;
    std::size_t total_cycles;      ///< cycles summed over every attempt
    std::vector<AdaptiveTraceRow> trace;
};

namespace detail {

inline double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
    return d;
}

inline double solution_error(const DiscreteSolution& sol) {
    double e = 0.0;
    for (double v : sol.abs_errors()) e = std::max(e, v);
    return e;
}

inline Grid blend_grids(const Grid& from, const Grid& to, double theta) {
    if (theta == 1.0) return to;
    std::vector<double> nodes(from.nodes().size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        nodes[j] = (1.0 - theta) * from.node(j) + theta * to.node(j);
    }
    nodes.front() = 0.0;
    nodes.back() = from.ell();
    return Grid(std::move(nodes));
}

struct Attempt {
    AdaptiveResult result;
    double best_change;
};

inline Attempt run_adaptive_attempt(const ProblemSpec& spec, std::size_t n, const AdaptiveConfig& cfg, double theta) {
    Grid grid = uniform_grid(spec, n);
    DiscreteSolution sol = solve_bvp(grid, spec);

    std::vector<AdaptiveTraceRow> trace;
    std::optional<DiscreteSolution> best;
    double best_change = std::numeric_limits<double>::infinity();
    std::size_t best_n = 0;

    for (std::size_t cycle = 1; cycle <= cfg.max_outer; ++cycle) {
        Grid next_grid = grid;
        // alpha = 0 makes the monitor constant, whose equidistributed grid is the uniform start grid
        if (cfg.alpha != 0.0) {
            const MonitorFunction monitor = MonitorFunction::adaptive(cfg.alpha, cfg.beta, grid, sol.values);
            const EquidistResult eq = equidistribute(monitor, spec, n, cfg.inner, grid);
            next_grid = blend_grids(grid, eq.grid, theta);
        }
        DiscreteSolution next = solve_bvp(next_grid, spec);

        const double change = max_abs_difference(next.values, sol.values);
        const double grid_change = max_node_displacement(grid, next_grid);
        trace.push_back({cycle, solution_error(next), change, grid_change});

        grid = std::move(next_grid);
        sol = std::move(next);

        if (change < cfg.eps) {
            const double err = solution_error(sol);
            return {AdaptiveResult{std::move(sol), cycle, err, true, theta, 1, cycle, std::move(trace)}, change};
        }
        if (change < best_change) {
            best_change = change;
            best = sol;
            best_n = cycle;
        }
    }
    DiscreteSolution kept = best ? std::move(*best) : std::move(sol);
    const double err = solution_error(kept);
    return {AdaptiveResult{std::move(kept), best_n, err, false, theta, 1, cfg.max_outer, std::move(trace)},
            best_change};
}

}  // namespace detail

/**
 * Runs the adaptive loop. A non-converged run returns the iterate with the smallest
 * solution change and converged = false. Throws DomainError if the monitor turns
 * non-finite.
 */
inline AdaptiveResult adaptive_solve(const ProblemSpec& spec, std::size_t n, const AdaptiveConfig& cfg = {}) {
    detail::check_interval_count(n);
    if (!(cfg.eps > 0.0)) throw InvalidArgument("adaptive tolerance eps must be > 0");
    if (!(cfg.relaxation > 0.0 && cfg.relaxation <= 1.0)) {
        throw InvalidArgument("relaxation must lie in (0, 1]");
    }
    if (cfg.max_outer == 0) throw InvalidArgument("max_outer must be >= 1");

    double theta = cfg.relaxation;
    std::size_t total = 0;
    std::optional<detail::Attempt> best;
    for (std::size_t attempt = 0; attempt <= cfg.relaxation_retries; ++attempt, theta *= 0.5) {
        detail::Attempt current = detail::run_adaptive_attempt(spec, n, cfg, theta);
        total += current.result.total_cycles;
        const bool done = current.result.converged;
        if (!best || done || current.best_change < best->best_change) {
            best = std::move(current);
        }
        best->result.attempts = attempt + 1;
        best->result.total_cycles = total;
        if (done) break;
    }
    return std::move(best->result);
}

/// Columns n,error_norm,solution_change,grid_change.
inline void write_trace_csv(std::ostream& out, const std::vector<AdaptiveTraceRow>& trace) {
    csv::Table table{{"n", "error_norm", "solution_change", "grid_change"}, {}};
    for (const auto& row : trace) {
        table.rows.push_back({std::to_string(row.n), csv::format_real(row.error_norm),
                              csv::format_real(row.solution_change), csv::format_real(row.grid_change)});
    }
    csv::write(out, table);
}

}  // namespace supragrid
