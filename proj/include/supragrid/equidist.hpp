#pragma once

/**
 * @file equidist.hpp
 * @brief Discrete equidistribution grid generator
 *
 * Solves  [w_{j+1/2} (x_{j+1} - x_j) - w_{j-1/2} (x_j - x_{j-1})] / h^2 = 0,  x_0 = 0, x_N = ell,
 * where w_{j+1/2} is the monitor on interval j. The monitor depends on the grid,
 * so the equations are lagged: monitor values are frozen at the current iterate,
 * the resulting linear tridiagonal system is solved, and the sweep is repeated
 * until no node moves by more than the tolerance. A converged grid satisfies
 * w_{j+1/2} J_{j+1/2} = C_h for all j.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "supragrid/errors.hpp"
#include "supragrid/grid.hpp"
#include "supragrid/linalg.hpp"
#include "supragrid/problem.hpp"

namespace supragrid {

/// How a pointwise monitor is reduced to one value per interval.
enum class MonitorSampling {
    Midpoint,     ///< w_{j+1/2} = w((x_j + x_{j+1}) / 2)
    CellAverage,  ///< w_{j+1/2} = (1/h_{j+1/2}) * integral of w over [x_j, x_{j+1}], exact
};

/// w = 1
struct ConstantMonitor {};

/// w = (u_x)^beta with u_x from the exact solution.
struct ExactPowerMonitor {
    double beta;
    ProblemSpec spec;
    MonitorSampling sampling = MonitorSampling::Midpoint;
};

/**
 * w = 1 + alpha |u_x|^beta with |u_x| taken from a discrete solution.
 *
 * The slope on interval j is |u_{j+1} - u_j| / h_{j+1/2} on the grid the solution
 * was computed on, and it stays attached to interval j while the nodes move.
 */
struct AdaptiveMonitor {
    double alpha;
    double beta;
    std::vector<double> slopes;
};

class MonitorFunction {
public:
    using Kind = std::variant<ConstantMonitor, ExactPowerMonitor, AdaptiveMonitor>;

    explicit MonitorFunction(Kind kind, double scale = 1.0) : kind_(std::move(kind)), scale_(scale) {
        if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
            throw InvalidArgument("monitor scale must be finite and > 0");
        }
        if (const auto* p = std::get_if<ExactPowerMonitor>(&kind_); p && !(p->beta >= 0.0)) {
            throw InvalidArgument("monitor beta must be >= 0");
        }
        if (const auto* a = std::get_if<AdaptiveMonitor>(&kind_); a && !(a->alpha >= 0.0 && a->beta >= 0.0)) {
            throw InvalidArgument("adaptive monitor needs alpha >= 0 and beta >= 0");
        }
    }

    static MonitorFunction constant() { return MonitorFunction(ConstantMonitor{}); }

    static MonitorFunction exact_power(const ProblemSpec& spec, double beta,
                                       MonitorSampling sampling = MonitorSampling::Midpoint) {
        return MonitorFunction(ExactPowerMonitor{beta, spec, sampling});
    }

    /// Builds interval slopes from node values living on `grid`.
    static MonitorFunction adaptive(double alpha, double beta, const Grid& grid, std::span<const double> values) {
        if (values.size() != grid.intervals() + 1) {
            throw InvalidArgument("adaptive monitor: value count does not match the grid");
        }
        std::vector<double> slopes(grid.intervals());
        for (std::size_t j = 0; j < slopes.size(); ++j) {
            slopes[j] = std::abs(values[j + 1] - values[j]) / grid.step(j);
        }
        return MonitorFunction(AdaptiveMonitor{alpha, beta, std::move(slopes)});
    }

    /// Same monitor multiplied by c > 0.
    MonitorFunction scaled(double c) const { return MonitorFunction(kind_, scale_ * c); }

    const Kind& kind() const noexcept { return kind_; }
    double scale() const noexcept { return scale_; }

    /// Pointwise value; adaptive monitors have no pointwise form and throw.
    double operator()(double x) const {
        return std::visit(
            [&](const auto& m) -> double {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, ConstantMonitor>) {
                    return scale_;
                } else if constexpr (std::is_same_v<M, ExactPowerMonitor>) {
                    return scale_ * power_value(m, x);
                } else {
                    throw InvalidArgument("adaptive monitor is defined per interval, not pointwise");
                }
            },
            kind_);
    }

    /// w_{j+1/2} for j = 0..N-1. Throws DomainError unless every value is finite and > 0.
    std::vector<double> interval_values(const Grid& grid) const {
        const std::size_t n = grid.intervals();
        std::vector<double> w(n);
        std::visit(
            [&](const auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, ConstantMonitor>) {
                    std::fill(w.begin(), w.end(), 1.0);
                } else if constexpr (std::is_same_v<M, ExactPowerMonitor>) {
                    for (std::size_t j = 0; j < n; ++j) {
                        w[j] = m.sampling == MonitorSampling::Midpoint
                                   ? power_value(m, 0.5 * (grid.node(j) + grid.node(j + 1)))
                                   : power_cell_average(m, grid.node(j), grid.node(j + 1));
                    }
                } else {
                    if (m.slopes.size() != n) {
                        throw InvalidArgument("adaptive monitor has " + std::to_string(m.slopes.size()) +
                                              " interval slopes, grid has " + std::to_string(n) + " intervals");
                    }
                    for (std::size_t j = 0; j < n; ++j) {
                        w[j] = 1.0 + m.alpha * std::pow(m.slopes[j], m.beta);
                    }
                }
            },
            kind_);
        for (std::size_t j = 0; j < n; ++j) {
            w[j] *= scale_;
            if (!(w[j] > 0.0) || !std::isfinite(w[j])) {
                throw DomainError("monitor value on interval " + std::to_string(j) + " is " + std::to_string(w[j]) +
                                  "; it must be finite and positive");
            }
        }
        return w;
    }

private:
    // (lambda e^{lambda (x - ell)})^beta, evaluated in log form so large lambda does not overflow.
    static double power_value(const ExactPowerMonitor& m, double x) {
        if (m.beta == 0.0) return 1.0;
        const double lambda = m.spec.lambda();
        return std::exp(m.beta * (std::log(lambda) + lambda * (x - m.spec.ell())));
    }

    static double power_cell_average(const ExactPowerMonitor& m, double a, double b) {
        if (m.beta == 0.0) return 1.0;
        const double rate = m.beta * m.spec.lambda();
        const double width = b - a;
        // integral of w over [a, b] divided by (b - a), written relative to the right end point
        const double shrink = -std::expm1(-rate * width) / (rate * width);
        return power_value(m, b) * shrink;
    }

    Kind kind_;
    double scale_;
};

struct EquidistOptions {
    double tol = 1e-12;
    std::size_t max_iter = 10000;
};

struct EquidistResult {
    Grid grid;
    std::size_t iterations;
    double final_update;    ///< max node displacement of the last sweep
    double equidist_defect; ///< max_j |w_{j+1/2} J_{j+1/2} - mean| / mean on the final grid
};

/**
 * Linear system of one lagged sweep for the interior nodes x_1..x_{N-1}.
 * The common 1/h^2 factor is dropped. Off-diagonals are -w, so the matrix is
 * an irreducibly diagonally dominant M-matrix whenever w > 0.
 */
inline TridiagonalSystem linearized_grid_system(std::span<const double> w, double ell) {
    const std::size_t n = w.size();
    TridiagonalSystem sys(n - 1);
    for (std::size_t j = 1; j < n; ++j) {
        const std::size_t row = j - 1;
        sys.diag[row] = w[j - 1] + w[j];
        if (j > 1) sys.lower[row - 1] = -w[j - 1];
        if (j + 1 < n) {
            sys.upper[row] = -w[j];
        } else {
            sys.rhs[row] = w[j] * ell;
        }
    }
    return sys;
}

/// One lagged sweep: freeze the monitor on `grid`, solve for the new nodes.
inline Grid equidistribution_sweep(const MonitorFunction& monitor, const Grid& grid) {
    const std::vector<double> w = monitor.interval_values(grid);
    const std::vector<double> interior = solve_tridiagonal(linearized_grid_system(w, grid.ell()));
    std::vector<double> nodes(grid.intervals() + 1);
    nodes.front() = 0.0;
    std::copy(interior.begin(), interior.end(), nodes.begin() + 1);
    nodes.back() = grid.ell();
    return Grid(std::move(nodes));  // throws MonotonicityError on a folded grid
}

inline double equidist_defect(const Grid& grid, const MonitorFunction& monitor) {
    const std::vector<double> w = monitor.interval_values(grid);
    std::vector<double> c(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) c[j] = w[j] * grid.jacobian_half(j);
    const double mean = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
    double worst = 0.0;
    for (double v : c) worst = std::max(worst, std::abs(v - mean));
    return worst / mean;
}

inline double max_node_displacement(const Grid& a, const Grid& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.nodes().size(); ++j) d = std::max(d, std::abs(a.node(j) - b.node(j)));
    return d;
}

/**
 * Repeats lagged sweeps from `initial` (uniform when absent) until the max node
 * displacement drops below options.tol. Throws ConvergenceError after
 * options.max_iter sweeps and MonotonicityError if a sweep folds the grid.
 */
inline EquidistResult equidistribute(const MonitorFunction& monitor, const ProblemSpec& spec, std::size_t n,
                                     const EquidistOptions& options = {},
                                     const std::optional<Grid>& initial = std::nullopt) {
    if (!(options.tol > 0.0)) {
        throw InvalidArgument("equidistribution tolerance must be > 0");
    }
    Grid current = initial ? *initial : uniform_grid(spec, n);
    if (current.intervals() != n || current.ell() != spec.ell()) {
        throw InvalidArgument("initial grid does not match N = " + std::to_string(n) + " and ell");
    }
    double update = 0.0;
    for (std::size_t it = 1; it <= options.max_iter; ++it) {
        Grid next = equidistribution_sweep(monitor, current);
        update = max_node_displacement(current, next);
        current = std::move(next);
        if (update < options.tol) {
            const double defect = equidist_defect(current, monitor);
            return EquidistResult{std::move(current), it, update, defect};
        }
    }
    throw ConvergenceError("equidistribution did not converge in " + std::to_string(options.max_iter) + " sweeps",
                           update);
}

}  // namespace supragrid
