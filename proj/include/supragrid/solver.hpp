#pragma once

/**
 * @file solver.hpp
 * @brief Centered three-point scheme on an arbitrary grid
 *
 *   -[(u_{j+1} - u_j)/h_{j+1/2} - (u_j - u_{j-1})/h_{j-1/2}] / h_j + lambda^2 u_j = 0,  j = 1..N-1
 *
 * On equal steps this is the classical (u_{j+1} - 2u_j + u_{j-1})/dx^2 stencil.
 * It is also the reference-domain scheme with Jacobians J_{j+1/2}, J_j written
 * back in physical coordinates, so only this one form is assembled.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "supragrid/csv.hpp"
#include "supragrid/grid.hpp"
#include "supragrid/linalg.hpp"
#include "supragrid/problem.hpp"

namespace supragrid {

/// Operator coefficients and Dirichlet data; lambda = 0 is allowed here (pure diffusion).
struct SchemeData {
    double lambda;
    double left_bc;
    double right_bc;

    static SchemeData from(const ProblemSpec& spec) { return {spec.lambda(), spec.left_bc(), spec.right_bc()}; }
};

/**
 * (N-1)-unknown system for the interior nodes; the boundary values are folded
 * into the first and last right-hand-side entries.
 */
inline TridiagonalSystem assemble_scheme(const Grid& grid, const SchemeData& data) {
    const std::size_t n = grid.intervals();
    TridiagonalSystem sys(n - 1);
    const double reaction = data.lambda * data.lambda;
    for (std::size_t j = 1; j < n; ++j) {
        const std::size_t row = j - 1;
        const double hj = grid.mean_step(j);
        const double west = 1.0 / (hj * grid.step(j - 1));
        const double east = 1.0 / (hj * grid.step(j));
        sys.diag[row] = west + east + reaction;
        if (j > 1) {
            sys.lower[row - 1] = -west;
        } else {
            sys.rhs[row] += west * data.left_bc;
        }
        if (j + 1 < n) {
            sys.upper[row] = -east;
        } else {
            sys.rhs[row] += east * data.right_bc;
        }
    }
    return sys;
}

inline TridiagonalSystem assemble_scheme(const Grid& grid, const ProblemSpec& spec) {
    return assemble_scheme(grid, SchemeData::from(spec));
}

/// Node values u_0..u_N, boundary values imposed exactly.
inline std::vector<double> solve_scheme(const Grid& grid, const SchemeData& data) {
    const std::vector<double> interior = solve_tridiagonal(assemble_scheme(grid, data));
    std::vector<double> values(grid.intervals() + 1);
    values.front() = data.left_bc;
    std::copy(interior.begin(), interior.end(), values.begin() + 1);
    values.back() = data.right_bc;
    return values;
}

struct DiscreteSolution {
    Grid grid;
    std::vector<double> values;
    ProblemSpec spec;

    std::size_t intervals() const noexcept { return grid.intervals(); }

    /// u(x_j) at every node.
    std::vector<double> exact_values() const {
        std::vector<double> out(values.size());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = exact_solution(spec, grid.node(j));
        return out;
    }

    /// |u_j - u(x_j)| at every node.
    std::vector<double> abs_errors() const {
        std::vector<double> out = exact_values();
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::abs(values[j] - out[j]);
        return out;
    }
};

inline DiscreteSolution solve_bvp(const Grid& grid, const ProblemSpec& spec) {
    if (grid.ell() != spec.ell()) {
        throw InvalidArgument("grid length " + std::to_string(grid.ell()) + " differs from problem ell " +
                              std::to_string(spec.ell()));
    }
    return DiscreteSolution{grid, solve_scheme(grid, SchemeData::from(spec)), spec};
}

/// Columns x,u,u_exact,abs_error.
inline void write_solution_csv(std::ostream& out, const DiscreteSolution& sol) {
    csv::Table table{{"x", "u", "u_exact", "abs_error"}, {}};
    const auto exact = sol.exact_values();
    for (std::size_t j = 0; j < sol.values.size(); ++j) {
        table.rows.push_back({csv::format_real(sol.grid.node(j)), csv::format_real(sol.values[j]),
                              csv::format_real(exact[j]), csv::format_real(std::abs(sol.values[j] - exact[j]))});
    }
    csv::write(out, table);
}

}  // namespace supragrid
