#include <gtest/gtest.h>

#include <cmath>

#include "supragrid/problem.hpp"

using namespace supragrid;

namespace {

// 40-digit references for exp(-10), exp(-1/2) and 1000 exp(-5).
constexpr double kExpMinus10 = 4.539992976248485153559151556055061023792e-5;
constexpr double kExpMinusHalf = 0.6065306597126334236037995349911804534419;
constexpr double kThousandExpMinus5 = 6.73794699908546709663604842314842424885;

}  // namespace

TEST(ProblemSpec, RejectsNonPositiveParameters) {
    EXPECT_THROW(ProblemSpec(0.0, 1.0), InvalidArgument);
    EXPECT_THROW(ProblemSpec(-1.0, 1.0), InvalidArgument);
    EXPECT_THROW(ProblemSpec(10.0, 0.0), InvalidArgument);
    EXPECT_THROW(ProblemSpec(NAN, 1.0), InvalidArgument);
}

TEST(ProblemSpec, BoundaryValuesAndSmallParameter) {
    const ProblemSpec spec(10.0, 1.0);
    EXPECT_EQ(spec.left_bc(), std::exp(-10.0));
    EXPECT_EQ(spec.right_bc(), 1.0);
    EXPECT_DOUBLE_EQ(spec.epsilon(), 0.01);
}

TEST(ExactSolution, ReferenceValues) {
    EXPECT_EQ(exact_solution(ProblemSpec(10.0, 1.0), 1.0), 1.0);
    EXPECT_NEAR(exact_solution(ProblemSpec(10.0, 1.0), 0.0), kExpMinus10, 1e-15 * kExpMinus10);
    EXPECT_NEAR(exact_solution(ProblemSpec(1.0, 1.0), 0.5), kExpMinusHalf, 1e-15);
}

TEST(ExactSolution, DomainError) {
    const ProblemSpec spec(10.0, 1.0);
    EXPECT_THROW(exact_solution(spec, -1e-9), DomainError);
    EXPECT_THROW(exact_solution(spec, 1.0 + 1e-9), DomainError);
    EXPECT_THROW(exact_derivative(spec, 2.0, 1), DomainError);
}

TEST(ExactSolution, MonotoneWithValuesInUnitInterval) {
    const ProblemSpec spec(10.0, 1.0);
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double u = exact_solution(spec, i / 100.0);
        EXPECT_GT(u, prev);
        EXPECT_LE(u, 1.0);
        prev = u;
    }
}

TEST(ExactDerivative, ReferenceValues) {
    const ProblemSpec spec(10.0, 1.0);
    EXPECT_EQ(exact_derivative(spec, 1.0, 4), 10000.0);
    EXPECT_EQ(exact_derivative(spec, 1.0, 1), 10.0);
    EXPECT_NEAR(exact_derivative(spec, 0.5, 3), kThousandExpMinus5, 1e-14 * kThousandExpMinus5);
}

TEST(ExactDerivative, OrderRange) {
    const ProblemSpec spec(10.0, 1.0);
    EXPECT_THROW(exact_derivative(spec, 0.5, 0), InvalidArgument);
    EXPECT_THROW(exact_derivative(spec, 0.5, kMaxDerivativeOrder + 1), InvalidArgument);
    EXPECT_NO_THROW(exact_derivative(spec, 0.5, kMaxDerivativeOrder));
}

TEST(ExactSolution, SatisfiesOdeAndDerivativeLadder) {
    for (double lambda : {0.5, 1.0, 10.0, 100.0}) {
        const ProblemSpec spec(lambda, 1.0);
        for (int i = 1; i < 50; ++i) {
            const double x = i / 50.0;
            const double u = exact_solution(spec, x);
            const double uxx = exact_derivative(spec, x, 2);
            EXPECT_LE(std::abs(uxx - lambda * lambda * u), 1e-12 * std::abs(uxx));
            for (int k = 1; k < kMaxDerivativeOrder; ++k) {
                const double ratio = exact_derivative(spec, x, k + 1) / exact_derivative(spec, x, k);
                EXPECT_NEAR(ratio, lambda, 1e-12 * lambda);
            }
        }
    }
}

TEST(ExactSolution, BoundaryConsistency) {
    for (double lambda : {1.0, 10.0, 100.0}) {
        for (double ell : {0.5, 1.0, 3.0}) {
            const ProblemSpec spec(lambda, ell);
            EXPECT_EQ(exact_solution(spec, 0.0), spec.left_bc());
            EXPECT_EQ(exact_solution(spec, ell), spec.right_bc());
        }
    }
}
