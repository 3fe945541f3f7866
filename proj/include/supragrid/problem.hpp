#pragma once

/**
 * @file problem.hpp
 * @brief Model boundary-value problem  -u'' + lambda^2 u = 0  on [0, ell]
 *
 * Dirichlet data u(0) = exp(-lambda ell), u(ell) = 1, so the exact solution is
 * u(x) = exp(lambda (x - ell)). For lambda >> 1 the solution has a boundary layer
 * of width ~1/lambda at x = ell.
 */

#include <cmath>
#include <string>

#include "supragrid/errors.hpp"

namespace supragrid {

/// Highest derivative order the library evaluates.
inline constexpr int kMaxDerivativeOrder = 5;

class ProblemSpec {
public:
    ProblemSpec(double lambda, double ell) : lambda_(lambda), ell_(ell) {
        if (!(lambda > 0.0) || !std::isfinite(lambda)) {
            throw InvalidArgument("lambda must be a finite value > 0, got " + std::to_string(lambda));
        }
        if (!(ell > 0.0) || !std::isfinite(ell)) {
            throw InvalidArgument("ell must be a finite value > 0, got " + std::to_string(ell));
        }
        left_bc_ = std::exp(-lambda_ * ell_);
    }

    double lambda() const noexcept { return lambda_; }
    double ell() const noexcept { return ell_; }
    double left_bc() const noexcept { return left_bc_; }
    double right_bc() const noexcept { return 1.0; }

    /// Small-parameter form: -epsilon u'' + u = 0 with epsilon = 1/lambda^2.
    double epsilon() const noexcept { return 1.0 / (lambda_ * lambda_); }

    bool operator==(const ProblemSpec&) const = default;

private:
    double lambda_;
    double ell_;
    double left_bc_;
};

namespace detail {

inline void check_in_domain(const ProblemSpec& spec, double x) {
    if (!(x >= 0.0 && x <= spec.ell())) {
        throw DomainError("x = " + std::to_string(x) + " lies outside [0, " + std::to_string(spec.ell()) + "]");
    }
}

}  // namespace detail

/// u(x) = exp(lambda (x - ell)).
inline double exact_solution(const ProblemSpec& spec, double x) {
    detail::check_in_domain(spec, x);
    if (x == spec.ell()) {
        return spec.right_bc();
    }
    if (x == 0.0) {
        return spec.left_bc();
    }
    return std::exp(spec.lambda() * (x - spec.ell()));
}

/// d^k u / dx^k = lambda^k exp(lambda (x - ell)), 1 <= k <= kMaxDerivativeOrder.
inline double exact_derivative(const ProblemSpec& spec, double x, int order) {
    if (order < 1 || order > kMaxDerivativeOrder) {
        throw InvalidArgument("derivative order must lie in [1, " + std::to_string(kMaxDerivativeOrder) +
                              "], got " + std::to_string(order));
    }
    const double u = exact_solution(spec, x);
    return std::pow(spec.lambda(), order) * u;
}

}  // namespace supragrid
