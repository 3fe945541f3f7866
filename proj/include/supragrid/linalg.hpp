#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "supragrid/errors.hpp"

namespace supragrid {

/**
 * Tridiagonal system A x = rhs with A stored by bands.
 *
 * Row i reads  lower[i-1] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
 */
template <std::floating_point Real>
struct BasicTridiagonalSystem {
    std::vector<Real> lower;  ///< n-1 sub-diagonal entries
    std::vector<Real> diag;   ///< n diagonal entries
    std::vector<Real> upper;  ///< n-1 super-diagonal entries
    std::vector<Real> rhs;    ///< n right-hand-side entries

    BasicTridiagonalSystem() = default;

    explicit BasicTridiagonalSystem(std::size_t n)
        : lower(n > 0 ? n - 1 : 0), diag(n), upper(n > 0 ? n - 1 : 0), rhs(n) {}

    std::size_t size() const noexcept { return diag.size(); }

    /// Throws InvalidArgument if the band lengths disagree with size().
    void validate() const {
        const std::size_t n = diag.size();
        if (n == 0) {
            throw InvalidArgument("tridiagonal system must have at least one unknown");
        }
        if (lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n) {
            throw InvalidArgument("tridiagonal band lengths inconsistent with n = " + std::to_string(n));
        }
    }

    /// y = A x
    std::vector<Real> multiply(std::span<const Real> x) const {
        const std::size_t n = size();
        std::vector<Real> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            Real s = diag[i] * x[i];
            if (i > 0) s += lower[i - 1] * x[i - 1];
            if (i + 1 < n) s += upper[i] * x[i + 1];
            y[i] = s;
        }
        return y;
    }

    /// Max-row-sum norm of A.
    Real matrix_norm_inf() const {
        const std::size_t n = size();
        Real best = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Real s = std::abs(diag[i]);
            if (i > 0) s += std::abs(lower[i - 1]);
            if (i + 1 < n) s += std::abs(upper[i]);
            best = std::max(best, s);
        }
        return best;
    }

    /// |diag_i| > |lower_{i-1}| + |upper_i| for every row.
    bool strictly_diagonally_dominant() const {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i) {
            Real off = 0;
            if (i > 0) off += std::abs(lower[i - 1]);
            if (i + 1 < n) off += std::abs(upper[i]);
            if (!(std::abs(diag[i]) > off)) return false;
        }
        return true;
    }
};

using TridiagonalSystem = BasicTridiagonalSystem<double>;

/// Pivot magnitude below which elimination is declared broken down.
inline constexpr double kPivotBreakdown = 1e-300;

/**
 * Thomas algorithm (forward elimination, back substitution) without pivoting.
 *
 * The input is left untouched. Stable for diagonally dominant systems, which
 * is all this library produces. Throws PivotError with the elimination index
 * if a pivot collapses.
 */
template <std::floating_point Real>
std::vector<Real> solve_tridiagonal(const BasicTridiagonalSystem<Real>& sys) {
    sys.validate();
    const std::size_t n = sys.size();

    std::vector<Real> c_star(n);
    std::vector<Real> x(n);

    Real pivot = sys.diag[0];
    if (std::abs(pivot) < kPivotBreakdown) {
        throw PivotError(0, static_cast<double>(pivot));
    }
    c_star[0] = n > 1 ? sys.upper[0] / pivot : Real{0};
    x[0] = sys.rhs[0] / pivot;

    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i - 1] * c_star[i - 1];
        if (std::abs(pivot) < kPivotBreakdown) {
            throw PivotError(i, static_cast<double>(pivot));
        }
        c_star[i] = i + 1 < n ? sys.upper[i] / pivot : Real{0};
        x[i] = (sys.rhs[i] - sys.lower[i - 1] * x[i - 1]) / pivot;
    }

    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c_star[i] * x[i + 1];
    }
    return x;
}

}  // namespace supragrid
