#pragma once

/**
 * @file analysis.hpp
 * @brief Error norms, observed convergence orders and consistency-error diagnostics
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "supragrid/csv.hpp"
#include "supragrid/grid.hpp"
#include "supragrid/problem.hpp"
#include "supragrid/solver.hpp"

namespace supragrid {

/// ||u_h - u||_inf = max_j |u_j - u(x_j)|.
inline double max_error(const DiscreteSolution& sol) {
    double e = 0.0;
    for (std::size_t j = 0; j < sol.values.size(); ++j) {
        e = std::max(e, std::abs(sol.values[j] - exact_solution(sol.spec, sol.grid.node(j))));
    }
    return e;
}

/// max_j |values_j - exact(x_j)| for an arbitrary reference function.
inline double max_error(const Grid& grid, std::span<const double> values, const std::function<double(double)>& exact) {
    double e = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) e = std::max(e, std::abs(values[j] - exact(grid.node(j))));
    return e;
}

/// p = log2(e_coarse / e_fine) for a mesh-halving pair.
inline double convergence_order(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        throw DomainError("convergence order needs positive errors, got " + std::to_string(e_coarse) + " and " +
                          std::to_string(e_fine));
    }
    return std::log2(e_coarse / e_fine);
}

struct ConvergenceRow {
    std::size_t n;
    double error;
    std::optional<double> order;  ///< absent on the coarsest level
};

struct ConvergenceReport {
    std::string label;
    std::vector<ConvergenceRow> rows;

    void add(std::size_t n, double error) {
        std::optional<double> p;
        if (!rows.empty()) {
            if (n != 2 * rows.back().n) {
                throw InvalidArgument("refinement ladder must double N: " + std::to_string(rows.back().n) +
                                      " -> " + std::to_string(n));
            }
            p = convergence_order(rows.back().error, error);
        }
        rows.push_back({n, error, p});
    }
};

/// Solves on grid_for(N) for every N in the ladder.
inline ConvergenceReport convergence_study(std::string label, std::span<const std::size_t> ladder,
                                           const ProblemSpec& spec,
                                           const std::function<Grid(std::size_t)>& grid_for) {
    ConvergenceReport report{std::move(label), {}};
    for (std::size_t n : ladder) {
        report.add(n, max_error(solve_bvp(grid_for(n), spec)));
    }
    return report;
}

/// Columns N,error,p; p is empty on the first row.
inline void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
    csv::Table table{{"N", "error", "p"}, {}};
    for (const auto& row : report.rows) {
        table.rows.push_back({std::to_string(row.n), csv::format_real(row.error),
                              row.order ? csv::format_real(*row.order) : std::string{}});
    }
    csv::write(out, table);
}

/**
 * Several reports side by side, one (error, p) column pair per report:
 *
 *     N |   omega = 1      | ...
 *       |   error      p   | ...
 */
inline void write_report_table(std::ostream& out, std::span<const ConvergenceReport> reports) {
    char buf[64];
    out << "    N";
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, " | %-20s", r.label.c_str());
        out << buf;
    }
    out << "\n     ";
    for (std::size_t i = 0; i < reports.size(); ++i) out << " | " << "   error        p   ";
    out << '\n';
    const std::size_t rows = reports.empty() ? 0 : reports.front().rows.size();
    for (std::size_t k = 0; k < rows; ++k) {
        std::snprintf(buf, sizeof buf, "%5zu", reports.front().rows[k].n);
        out << buf;
        for (const auto& r : reports) {
            const auto& row = r.rows.at(k);
            std::snprintf(buf, sizeof buf, " | %9.2e   %6s  ", row.error,
                          row.order ? csv::format_short(*row.order).c_str() : "---");
            out << buf;
        }
        out << '\n';
    }
}

/**
 * psi_j = -[(u(x_{j+1}) - u(x_j))/h_{j+1/2} - (u(x_j) - u(x_{j-1}))/h_{j-1/2}] / h_j + lambda^2 u(x_j)
 * for j = 1..N-1, with an arbitrary smooth u inserted.
 */
inline std::vector<double> consistency_error(const Grid& grid, double lambda, const std::function<double(double)>& u) {
    const std::size_t n = grid.intervals();
    std::vector<double> psi(n - 1);
    for (std::size_t j = 1; j < n; ++j) {
        const double um = u(grid.node(j - 1));
        const double u0 = u(grid.node(j));
        const double up = u(grid.node(j + 1));
        const double flux = (up - u0) / grid.step(j) - (u0 - um) / grid.step(j - 1);
        psi[j - 1] = -flux / grid.mean_step(j) + lambda * lambda * u0;
    }
    return psi;
}

/// psi_j with the exact solution of the model problem inserted.
inline std::vector<double> consistency_error(const Grid& grid, const ProblemSpec& spec) {
    return consistency_error(grid, spec.lambda(), [&](double x) { return exact_solution(spec, x); });
}

/// The two terms of the leading h^2 coefficient of psi_j and their normalized sum.
struct FourthOrderResidual {
    double curvature_term;  ///< x_qq u_xxx
    double stretch_term;    ///< (1/4) x_q^2 u_xxxx
    double value;           ///< curvature_term + stretch_term
    double normalized;      ///< value / (|curvature_term| + |stretch_term| + tiny)
};

/**
 * R(q) = x_qq u_xxx + (1/4) x_q^2 u_xxxx at x = x(q), from the closed-form mapping
 * derivatives. psi_j = -(h^2/3) R(q_j) + O(h^4), so R == 0 makes the scheme fourth
 * order; for the power-monitor mappings that happens exactly when beta = 1/4.
 */
inline FourthOrderResidual fourth_order_residual(const MappingSpec& map, double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("fourth-order residual needs 0 < q < 1, got " + std::to_string(q));
    }
    const ProblemSpec& spec = map.problem();
    const double x = std::clamp(map.position(q), 0.0, spec.ell());
    const double xq = map.jacobian(q);
    const double xqq = map.jacobian_derivative(q);
    const double curvature = xqq * exact_derivative(spec, x, 3);
    const double stretch = 0.25 * xq * xq * exact_derivative(spec, x, 4);
    const double value = curvature + stretch;
    const double scale = std::abs(curvature) + std::abs(stretch) + std::numeric_limits<double>::min();
    return {curvature, stretch, value, value / scale};
}

}  // namespace supragrid
