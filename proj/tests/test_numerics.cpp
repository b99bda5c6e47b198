#include <doctest.h>

#include <random>

#include "conelat/numerics.hpp"
#include "lp_oracle.hpp"

using namespace conelat;
using conelat_tests::BfsBest;
using conelat_tests::enumerate_lp;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("least squares: identity and thin columns") {
    Matrix I2 = Matrix::Identity(2, 2);
    CHECK((solve_least_squares(I2, vec2(3, 4)) - vec2(3, 4)).norm() == doctest::Approx(0.0));

    Matrix col(2, 1);
    col << 1, 1;
    CHECK(solve_least_squares(col, vec2(1, 3))[0] == doctest::Approx(2.0));

    Matrix col2(2, 1);
    col2 << 1, 0;
    CHECK(solve_least_squares(col2, vec2(2, 5))[0] == doctest::Approx(2.0));
}

TEST_CASE("least squares: rank deficiency resolves to the minimum-norm solution") {
    Matrix A(2, 2);
    A << 1, 1, 1, 1;
    const Vector x = solve_least_squares(A, vec2(2, 2));
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
}

TEST_CASE("least squares: residual orthogonal to the column space") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N;
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 6);
        const int n = 1 + static_cast<int>(rng() % 5);
        Matrix A(m, n);
        Vector b(m);
        for (int i = 0; i < m; ++i) {
            b[i] = N(rng);
            for (int j = 0; j < n; ++j) A(i, j) = N(rng);
        }
        const Vector x = solve_least_squares(A, b);
        const Vector r = A * x - b;
        CHECK((A.transpose() * r).cwiseAbs().maxCoeff() <=
              1e-9 * (1.0 + A.norm() * (b.norm() + r.norm())));
    }
}

TEST_CASE("least squares: dimension mismatch throws") {
    CHECK_THROWS_AS(solve_least_squares(Matrix::Identity(3, 3), vec2(1, 2)), DimensionError);
}

TEST_CASE("nnls: componentwise clamp on the identity") {
    Matrix I2 = Matrix::Identity(2, 2);
    const Vector l = nnls(I2, vec2(-1, 2));
    CHECK(l[0] == doctest::Approx(0.0));
    CHECK(l[1] == doctest::Approx(2.0));
    const Vector m = nnls(I2, vec2(3, 4));
    CHECK(m[0] == doctest::Approx(3.0));
    CHECK(m[1] == doctest::Approx(4.0));
}

TEST_CASE("nnls: one-dimensional clamp against the hand oracle") {
    // minimize (l-1)^2 + l^2 over l >= 0: minimizer 0.5
    Matrix col(2, 1);
    col << 1, 1;
    CHECK(nnls(col, vec2(1, 0))[0] == doctest::Approx(0.5));
}

TEST_CASE("nnls: residual never exceeds ||b|| and recovery holds on cone members") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> N;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 5);
        const int n = 1 + static_cast<int>(rng() % 6);
        Matrix A(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = N(rng);
        Vector b(m);
        for (int i = 0; i < m; ++i) b[i] = N(rng);

        const Vector l = nnls(A, b);
        CHECK(l.minCoeff() >= 0.0);
        CHECK((A * l - b).norm() <= b.norm() + 1e-12);
        CHECK(nnls_kkt_residual(A, b, l) <= 1e-8);

        Vector mu(n);
        for (int j = 0; j < n; ++j) mu[j] = std::abs(N(rng));
        const Vector target = A * mu;
        const Vector rec = nnls(A, target);
        CHECK((A * rec - target).norm() <= 1e-9 * (1.0 + target.norm()));
    }
}

TEST_CASE("lp_solve: the three textbook statuses") {
    {
        LpProblem p;
        p.eq_matrix = Matrix::Ones(1, 2);
        p.eq_rhs = Vector::Ones(1);
        p.objective = vec2(1, 0);
        const LpResult r = lp_solve(p);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.value == doctest::Approx(1.0));
        CHECK(r.point[0] == doctest::Approx(1.0));
        CHECK(r.point[1] == doctest::Approx(0.0));
    }
    {
        LpProblem p;
        p.eq_matrix = Matrix::Zero(1, 1);
        p.eq_matrix(0, 0) = 1.0;
        p.eq_rhs = Vector::Constant(1, -1.0);
        p.objective = Vector::Ones(1);
        CHECK(lp_solve(p).status == LpStatus::Infeasible);
    }
    {
        LpProblem p;
        p.eq_matrix = Matrix(1, 2);
        p.eq_matrix << 1, -1;
        p.eq_rhs = Vector::Zero(1);
        p.objective = vec2(1, 0);
        CHECK(lp_solve(p).status == LpStatus::Unbounded);
    }
}

TEST_CASE("lp_solve: optimal points satisfy the feasibility contract") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const int n = m + static_cast<int>(rng() % 3);
        Matrix A(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = N(rng);
        Vector v0(n);
        for (int j = 0; j < n; ++j) v0[j] = std::abs(N(rng));
        LpProblem p;
        p.eq_matrix = A;
        p.eq_rhs = A * v0;  // feasible by construction
        p.objective = Vector(n);
        for (int j = 0; j < n; ++j) p.objective[j] = N(rng);

        const LpResult r = lp_solve(p);
        if (r.status != LpStatus::Optimal) continue;
        CHECK((A * r.point - p.eq_rhs).cwiseAbs().maxCoeff() <=
              1e-9 * (1.0 + p.eq_rhs.norm()));
        CHECK(r.point.minCoeff() >= -1e-9);
    }
}

TEST_CASE("lp_solve: matches brute-force vertex enumeration on bounded instances") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> N;
    int optimal_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const int n = m + static_cast<int>(rng() % (7 - m));
        Matrix A(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = N(rng);
        Vector v0(n);
        for (int j = 0; j < n; ++j) v0[j] = std::abs(N(rng));
        // dual-feasible objective keeps the instance bounded
        Vector w(m), g(n);
        for (int i = 0; i < m; ++i) w[i] = N(rng);
        for (int j = 0; j < n; ++j) g[j] = std::abs(N(rng));
        LpProblem p;
        p.eq_matrix = A;
        p.eq_rhs = A * v0;
        p.objective = A.transpose() * w - g;

        const LpResult r = lp_solve(p);
        REQUIRE(r.status == LpStatus::Optimal);
        const BfsBest oracle = enumerate_lp(A, p.eq_rhs, p.objective);
        REQUIRE(oracle.feasible);
        CHECK(std::abs(r.value - oracle.value) <=
              1e-8 * (1.0 + std::abs(oracle.value)));
        ++optimal_seen;
    }
    CHECK(optimal_seen == 200);
}
