#pragma once

/**
 * @file grid.hpp
 * @brief Non-uniform 1D grids on [0, ell] and the closed-form equidistributed mappings
 *
 * A grid is the image x_j = x(q_j) of the uniform reference grid q_j = j h,
 * h = 1/N, under a monotone mapping x : [0, 1] -> [0, ell]. The discrete
 * Jacobian proxies are J_{j+1/2} = h_{j+1/2} / h and J_j = (J_{j-1/2} + J_{j+1/2}) / 2.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "supragrid/csv.hpp"
#include "supragrid/errors.hpp"
#include "supragrid/problem.hpp"

namespace supragrid {

class Grid {
public:
    /// Takes ownership of the node set; requires x_0 = 0, N >= 2 and strictly increasing nodes.
    explicit Grid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 3) {
            throw InvalidArgument("a grid needs N >= 2 intervals, got " +
                                  std::to_string(nodes_.empty() ? 0 : nodes_.size() - 1));
        }
        if (nodes_.front() != 0.0) {
            throw InvalidArgument("grid must start at x = 0, got " + std::to_string(nodes_.front()));
        }
        for (std::size_t j = 0; j + 1 < nodes_.size(); ++j) {
            if (!(nodes_[j + 1] > nodes_[j])) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "grid step h_{%zu+1/2} = %.3e is not positive", j,
                              nodes_[j + 1] - nodes_[j]);
                throw MonotonicityError(buf);
            }
        }
        if (!std::isfinite(nodes_.back())) {
            throw InvalidArgument("grid end point is not finite");
        }
    }

    /// Number of intervals N.
    std::size_t intervals() const noexcept { return nodes_.size() - 1; }
    double ell() const noexcept { return nodes_.back(); }

    /// Reference-domain step h = 1/N.
    double reference_step() const noexcept { return 1.0 / static_cast<double>(intervals()); }

    std::span<const double> nodes() const noexcept { return nodes_; }
    double node(std::size_t j) const { return nodes_.at(j); }

    /// h_{j+1/2} = x_{j+1} - x_j, j = 0..N-1.
    double step(std::size_t j) const { return nodes_.at(j + 1) - nodes_.at(j); }

    /// h_j = (h_{j-1/2} + h_{j+1/2}) / 2, interior j = 1..N-1.
    double mean_step(std::size_t j) const { return 0.5 * (step(j - 1) + step(j)); }

    /// J_{j+1/2} = h_{j+1/2} / h.
    double jacobian_half(std::size_t j) const { return step(j) / reference_step(); }

    /// J_j = (J_{j-1/2} + J_{j+1/2}) / 2, interior j = 1..N-1.
    double jacobian(std::size_t j) const { return 0.5 * (jacobian_half(j - 1) + jacobian_half(j)); }

    std::vector<double> steps() const {
        std::vector<double> out(intervals());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = step(j);
        return out;
    }

    double max_step() const {
        double best = 0.0;
        for (std::size_t j = 0; j < intervals(); ++j) best = std::max(best, step(j));
        return best;
    }

    double min_step() const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < intervals(); ++j) best = std::min(best, step(j));
        return best;
    }

    bool operator==(const Grid&) const = default;

private:
    std::vector<double> nodes_;
};

namespace detail {

inline void check_interval_count(std::size_t n) {
    if (n < 2) {
        throw InvalidArgument("N must be >= 2, got " + std::to_string(n));
    }
}

}  // namespace detail

/// x_j = j ell / N.
inline Grid uniform_grid(const ProblemSpec& spec, std::size_t n) {
    detail::check_interval_count(n);
    std::vector<double> nodes(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        nodes[j] = static_cast<double>(j) * spec.ell() / static_cast<double>(n);
    }
    nodes[n] = spec.ell();
    return Grid(std::move(nodes));
}

struct UniformMapping {};

/// Mapping that equidistributes the monitor (u_x)^beta for the exact solution.
struct PowerMonitorMapping {
    double beta;
};

/**
 * Closed-form reference-to-physical mapping.
 *
 * For the power monitor with beta > 0,
 *   x(q) = ell + ln[q + (1 - q) exp(-beta lambda ell)] / (beta lambda),
 * and beta = 0 reduces to x(q) = q ell.
 */
class MappingSpec {
public:
    using Kind = std::variant<UniformMapping, PowerMonitorMapping>;

    MappingSpec(Kind kind, ProblemSpec spec) : kind_(kind), spec_(spec) {
        if (const auto* p = std::get_if<PowerMonitorMapping>(&kind_)) {
            if (!(p->beta >= 0.0) || !std::isfinite(p->beta)) {
                throw InvalidArgument("mapping beta must be finite and >= 0, got " + std::to_string(p->beta));
            }
        }
    }

    static MappingSpec uniform(const ProblemSpec& spec) { return {UniformMapping{}, spec}; }
    static MappingSpec power_monitor(const ProblemSpec& spec, double beta) {
        return {PowerMonitorMapping{beta}, spec};
    }

    const Kind& kind() const noexcept { return kind_; }
    const ProblemSpec& problem() const noexcept { return spec_; }

    /// beta of the monitor; 0 for the uniform mapping.
    double beta() const noexcept {
        const auto* p = std::get_if<PowerMonitorMapping>(&kind_);
        return p ? p->beta : 0.0;
    }

    bool is_linear() const noexcept { return beta() == 0.0; }

    /// exp(-beta lambda ell) rounds to zero in double precision.
    bool decay_underflows() const noexcept { return !is_linear() && decay() == 0.0; }

    /// x(q)
    double position(double q) const {
        check_reference(q);
        if (is_linear()) return q * spec_.ell();
        if (q == 0.0) return 0.0;
        if (q == 1.0) return spec_.ell();
        return spec_.ell() + std::log(stretch(q)) / rate();
    }

    /// x_q = (1 - E) / (beta lambda s(q)),  s(q) = q + (1 - q) E,  E = exp(-beta lambda ell).
    double jacobian(double q) const {
        check_reference(q);
        if (is_linear()) return spec_.ell();
        return -std::expm1(-rate() * spec_.ell()) / (rate() * stretch(q));
    }

    /// x_qq = -(1 - E)^2 / (beta lambda s(q)^2).
    double jacobian_derivative(double q) const {
        check_reference(q);
        if (is_linear()) return 0.0;
        const double one_minus_e = -std::expm1(-rate() * spec_.ell());
        const double s = stretch(q);
        return -one_minus_e * one_minus_e / (rate() * s * s);
    }

    /// J_m = min x_q = x_q(1), J_M = max x_q = x_q(0) (x_q is monotone decreasing for beta > 0).
    double jacobian_min() const { return jacobian(1.0); }
    double jacobian_max() const { return jacobian(0.0); }

private:
    double rate() const noexcept { return beta() * spec_.lambda(); }
    double decay() const noexcept { return std::exp(-rate() * spec_.ell()); }
    double stretch(double q) const noexcept { return q + (1.0 - q) * decay(); }

    static void check_reference(double q) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw DomainError("reference coordinate q = " + std::to_string(q) + " outside [0, 1]");
        }
    }

    Kind kind_;
    ProblemSpec spec_;
};

/// Nodes x_j = x(j/N) with the end points pinned to exactly 0 and ell.
inline Grid analytic_mapped_grid(const MappingSpec& map, std::size_t n) {
    detail::check_interval_count(n);
    if (map.is_linear()) {
        return uniform_grid(map.problem(), n);
    }
    std::vector<double> nodes(n + 1);
    for (std::size_t j = 1; j < n; ++j) {
        nodes[j] = map.position(static_cast<double>(j) / static_cast<double>(n));
    }
    nodes.front() = 0.0;
    nodes.back() = map.problem().ell();
    return Grid(std::move(nodes));
}

/// Single-column CSV, header `x`.
inline void write_grid_csv(std::ostream& out, const Grid& grid) {
    csv::Table table{{"x"}, {}};
    for (double x : grid.nodes()) table.rows.push_back({csv::format_real(x)});
    csv::write(out, table);
}

inline Grid read_grid_csv(std::istream& in) { return Grid(csv::read(in).reals("x")); }

}  // namespace supragrid
