#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "supragrid/analysis.hpp"

using namespace supragrid;
using supragrid::testing::log2_slope;

TEST(MaxError, ZeroForInterpolant) {
    const ProblemSpec spec(10, 1);
    const Grid g = analytic_mapped_grid(MappingSpec::power_monitor(spec, 0.5), 15);
    DiscreteSolution sol{g, {}, spec};
    sol.values = sol.exact_values();
    EXPECT_EQ(max_error(sol), 0.0);
}

TEST(MaxError, ReferenceUniformValueAtTenIntervals) {
    const ProblemSpec spec(10, 1);
    EXPECT_NEAR(max_error(solve_bvp(uniform_grid(spec, 10), spec)), 0.141e-1, 0.0005e-1);
}

TEST(MaxError, DegenerateReactionFreeProblemIsExact) {
    const Grid g({0.0, 0.1, 0.15, 0.6, 0.61, 1.3, 2.0});
    const auto u = solve_scheme(g, SchemeData{0.0, 3.0, -1.0});
    EXPECT_LE(max_error(g, u, [](double x) { return 3.0 - 2.0 * x; }), 1e-12);
}

TEST(ConvergenceOrder, Values) {
    EXPECT_DOUBLE_EQ(convergence_order(4e-3, 1e-3), 2.0);
    EXPECT_NEAR(convergence_order(0.146e-4, 0.883e-6), 4.047, 0.001);
    EXPECT_NEAR(convergence_order(0.193, 0.137), 0.494, 0.001);
    EXPECT_THROW(convergence_order(0.0, 1.0), DomainError);
    EXPECT_THROW(convergence_order(1.0, -1.0), DomainError);
}

TEST(ConvergenceReport, RequiresDoublingLadder) {
    ConvergenceReport r{"x", {}};
    r.add(10, 1.0);
    EXPECT_FALSE(r.rows[0].order.has_value());
    r.add(20, 0.25);
    EXPECT_DOUBLE_EQ(*r.rows[1].order, 2.0);
    EXPECT_THROW(r.add(30, 0.1), InvalidArgument);
}

TEST(ConvergenceReport, CsvAndTable) {
    const ProblemSpec spec(10, 1);
    const std::vector<std::size_t> ladder{10, 20, 40};
    const ConvergenceReport r =
        convergence_study("uniform", ladder, spec, [&](std::size_t n) { return uniform_grid(spec, n); });
    std::stringstream buf;
    write_report_csv(buf, r);
    const csv::Table t = csv::read(buf);
    EXPECT_EQ(t.header, (std::vector<std::string>{"N", "error", "p"}));
    EXPECT_EQ(t.rows[0][2], "");
    EXPECT_EQ(t.reals("error")[2], r.rows[2].error);

    std::stringstream text;
    const std::vector<ConvergenceReport> reports{r};
    write_report_table(text, reports);
    EXPECT_NE(text.str().find("1.41e-02"), std::string::npos);
    EXPECT_NE(text.str().find("---"), std::string::npos);
}

TEST(ConsistencyError, UniformGridLeadingTerm) {
    // psi_j = -(lambda^4 e^{lambda (x_j - ell)} dx^2 / 12) (1 + O(lambda^2 dx^2))
    const ProblemSpec spec(10, 1);
    const std::size_t n = 100;
    const double dx = 1.0 / n;
    const Grid g = uniform_grid(spec, n);
    const auto psi = consistency_error(g, spec);
    for (std::size_t j = 1; j < n; ++j) {
        const double lead = std::pow(10.0, 4) * exact_solution(spec, g.node(j)) * dx * dx / 12;
        EXPECT_LT(psi[j - 1], 0.0);
        EXPECT_NEAR(std::abs(psi[j - 1]) / lead, 1.0, 0.05);
    }
}

TEST(ConsistencyError, LeadingCoefficientByRichardson) {
    const ProblemSpec spec(10, 1);
    const auto ratio_at = [&](std::size_t n, double x) {
        const Grid g = uniform_grid(spec, n);
        const std::size_t j = static_cast<std::size_t>(std::lround(x * n));
        const double dx = 1.0 / n;
        const double lead = 1e4 * exact_solution(spec, g.node(j)) * dx * dx / 12;
        return std::abs(consistency_error(g, spec)[j - 1]) / lead;
    };
    for (double x : {0.25, 0.5, 0.75}) {
        const double coarse = ratio_at(20, x);
        const double fine = ratio_at(40, x);
        EXPECT_NEAR((4 * fine - coarse) / 3, 1.0, 0.01) << "x = " << x;
    }
}

TEST(ConsistencyError, ConcentratesInTheLayer) {
    const ProblemSpec spec(10, 1);
    const Grid g = uniform_grid(spec, 20);
    const auto psi = consistency_error(g, spec);
    for (std::size_t k = 0; k + 1 < psi.size(); ++k) EXPECT_LT(std::abs(psi[k]), std::abs(psi[k + 1]));
    const double expected = std::exp(10.0 * (g.node(19) - g.node(1)));
    EXPECT_NEAR(psi.back() / psi.front(), expected, 0.1 * expected);
}

TEST(ConsistencyError, AffineFunctionsWithoutReaction) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> w(0.1, 1.0);
    std::vector<double> nodes{0.0};
    for (int j = 0; j < 30; ++j) nodes.push_back(nodes.back() + w(rng));
    const Grid g(nodes);
    for (double v : consistency_error(g, 0.0, [](double x) { return 2.5 * x - 7.0; })) EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(ConsistencyError, FourthOrderOnQuarterPowerGrid) {
    const ProblemSpec spec(10, 1);
    const MappingSpec map = MappingSpec::power_monitor(spec, 0.25);
    std::vector<double> ns, norms;
    for (std::size_t n : {20u, 40u, 80u, 160u}) {
        double m = 0;
        for (double v : consistency_error(analytic_mapped_grid(map, n), spec)) m = std::max(m, std::abs(v));
        ns.push_back(static_cast<double>(n));
        norms.push_back(m);
    }
    EXPECT_NEAR(-log2_slope(ns, norms), 4.0, 0.3);
}

TEST(FourthOrderResidual, VanishesOnlyForQuarterPower) {
    const ProblemSpec spec(10, 1);
    const auto r = [&](double beta) { return fourth_order_residual(MappingSpec::power_monitor(spec, beta), 0.5); };
    EXPECT_LE(std::abs(r(0.25).normalized), 1e-8);
    EXPECT_NEAR(r(0.5).normalized, -1.0 / 3.0, 1e-12);
    EXPECT_NEAR(r(2.0).normalized, (1.0 / 16 - 0.5) / (1.0 / 16 + 0.5), 1e-12);
    const auto uniform = r(0.0);
    EXPECT_EQ(uniform.curvature_term, 0.0);
    EXPECT_DOUBLE_EQ(uniform.normalized, 1.0);
    EXPECT_NEAR(uniform.value, 0.25 * 1e4 * std::exp(-5.0), 1e-12);
    EXPECT_THROW(fourth_order_residual(MappingSpec::uniform(spec), 0.0), DomainError);
}

TEST(FourthOrderResidual, PredictsTheConsistencyError) {
    // psi_j ~ -(h^2 / 3) R(q_j) on smooth mappings.
    const ProblemSpec spec(10, 1);
    const MappingSpec map = MappingSpec::power_monitor(spec, 0.5);
    const std::size_t n = 400;
    const Grid g = analytic_mapped_grid(map, n);
    const auto psi = consistency_error(g, spec);
    const double h = 1.0 / n;
    for (std::size_t j : {100u, 200u, 300u}) {
        const double predicted = -(h * h / 3) * fourth_order_residual(map, j * h).value;
        EXPECT_NEAR(psi[j - 1] / predicted, 1.0, 0.02) << "j = " << j;
    }
}

TEST(ConvergenceStudy, OrderDichotomy) {
    const ProblemSpec spec(10, 1);
    const std::vector<std::size_t> ladder{20, 40, 80, 160, 320};
    for (double beta : {0.0, 0.25, 0.5}) {
        const MappingSpec map = MappingSpec::power_monitor(spec, beta);
        const ConvergenceReport r =
            convergence_study("b", ladder, spec, [&](std::size_t n) { return analytic_mapped_grid(map, n); });
        const double target = beta == 0.25 ? 4.0 : 2.0;
        const double tol = beta == 0.25 ? 0.2 : 0.3;
        for (std::size_t k = 1; k < r.rows.size(); ++k) EXPECT_NEAR(*r.rows[k].order, target, tol) << beta;
    }
}
