#pragma once

// Test-only reference implementations, independent of the library code paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "supragrid/linalg.hpp"

namespace supragrid::testing {

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        }
        if (a[piv][k] == 0.0) throw std::runtime_error("singular");
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

inline std::vector<std::vector<double>> to_dense(const TridiagonalSystem& sys) {
    const std::size_t n = sys.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = sys.diag[i];
        if (i > 0) a[i][i - 1] = sys.lower[i - 1];
        if (i + 1 < n) a[i][i + 1] = sys.upper[i];
    }
    return a;
}

/// Random strictly row diagonally dominant system of size n.
inline TridiagonalSystem random_dominant_system(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    std::uniform_real_distribution<double> margin(0.1, 2.0);
    std::uniform_real_distribution<double> rhs(-10.0, 10.0);
    std::bernoulli_distribution sign;
    TridiagonalSystem sys(n);
    for (auto& v : sys.lower) v = off(rng);
    for (auto& v : sys.upper) v = off(rng);
    for (std::size_t i = 0; i < n; ++i) {
        double s = margin(rng);
        if (i > 0) s += std::abs(sys.lower[i - 1]);
        if (i + 1 < n) s += std::abs(sys.upper[i]);
        sys.diag[i] = sign(rng) ? s : -s;
        sys.rhs[i] = rhs(rng);
    }
    return sys;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Least-squares slope of log2(y) against log2(x).
inline double log2_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log2(x[i]), ly = std::log2(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace supragrid::testing
