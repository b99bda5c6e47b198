// Dense desk-scale optimization kernels: minimum-norm least squares,
// nonnegative least squares (Lawson-Hanson active set) and a two-phase
// primal simplex with Bland's anti-cycling rule.

#ifndef CONELAT_NUMERICS_HPP
#define CONELAT_NUMERICS_HPP

#include "conelat/types.hpp"

namespace conelat {

// Minimum-norm minimizer of ||Ax - b||_2 (column-pivoted orthogonal
// factorization, deterministic on rank-deficient input).
Vector solve_least_squares(const Matrix& A, const Vector& b);

// min ||A*lambda - b||_2 subject to lambda >= 0.
// Throws ConvergenceError after 3*cols outer iterations.
Vector nnls(const Matrix& A, const Vector& b, const Tolerances& tol = {});

// Worst KKT violation of a candidate nnls solution:
//   active columns (lambda_i > tol.zero):  |<a_i, A*lambda - b>|
//   inactive columns:                       max(0, -<a_i, A*lambda - b>)
// divided by (1 + ||b|| + column norm * residual norm) per column.
double nnls_kkt_residual(const Matrix& A, const Vector& b, const Vector& lambda,
                         const Tolerances& tol = {});

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

// maximize <objective, v>  subject to  eq_matrix * v = eq_rhs,  v >= 0
struct LpProblem {
    Vector objective;
    Matrix eq_matrix;
    Vector eq_rhs;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector point;        // empty unless Optimal
    double value = 0.0;  // meaningful only when Optimal
    int iterations = 0;
};

// Two-phase simplex, Bland's rule. Throws ConvergenceError if the iteration
// cap is exceeded (cannot happen under exact arithmetic with Bland's rule;
// kept as a guard against pathological round-off).
LpResult lp_solve(const LpProblem& p, const Tolerances& tol = {});

}  // namespace conelat

#endif
