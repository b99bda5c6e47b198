#include "conelat/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace conelat {

Vector solve_least_squares(const Matrix& A, const Vector& b) {
    require_finite(A, "solve_least_squares: A");
    require_finite(b, "solve_least_squares: b");
    if (A.rows() != b.size())
        throw DimensionError("solve_least_squares: rows(A) != dim(b)");
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
    return cod.solve(b);
}

namespace {

// Least squares restricted to a column subset, minimum-norm on the subset.
Vector subset_least_squares(const Matrix& A, const Vector& b, const std::vector<int>& cols) {
    Matrix Ap(A.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
        Ap.col(static_cast<Eigen::Index>(k)) = A.col(cols[k]);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(Ap);
    return cod.solve(b);
}

}  // namespace

Vector nnls(const Matrix& A, const Vector& b, const Tolerances& tol) {
    tol.validate();
    require_finite(A, "nnls: A");
    require_finite(b, "nnls: b");
    if (A.rows() != b.size())
        throw DimensionError("nnls: rows(A) != dim(b)");

    const Eigen::Index n = A.cols();
    Vector lambda = Vector::Zero(n);
    if (n == 0) return lambda;

    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double grad_scale = 1.0 + (A.transpose() * b).cwiseAbs().maxCoeff();
    const double w_tol = tol.feas * grad_scale;

    const int outer_cap = 3 * static_cast<int>(n);
    int outer = 0;
    while (true) {
        const Vector w = A.transpose() * (b - A * lambda);
        int enter = -1;
        double best_w = w_tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
                best_w = w[j];
                enter = static_cast<int>(j);
            }
        }
        if (enter < 0) break;  // KKT satisfied
        if (++outer > outer_cap)
            throw ConvergenceError("nnls: outer iteration cap (3*cols) exceeded");

        passive[static_cast<std::size_t>(enter)] = true;

        int inner_cap = 3 * static_cast<int>(n) + 10;
        while (true) {
            std::vector<int> pcols;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)]) pcols.push_back(static_cast<int>(j));
            const Vector z = subset_least_squares(A, b, pcols);

            if (z.size() == 0 || z.minCoeff() > 0.0) {
                for (std::size_t k = 0; k < pcols.size(); ++k)
                    lambda[pcols[k]] = z[static_cast<Eigen::Index>(k)];
                break;
            }
            if (--inner_cap < 0)
                throw ConvergenceError("nnls: inner iteration cap exceeded");

            // step toward z until the first passive coordinate hits zero
            double alpha = std::numeric_limits<double>::infinity();
            int blocker = -1;
            for (std::size_t k = 0; k < pcols.size(); ++k) {
                const double zk = z[static_cast<Eigen::Index>(k)];
                if (zk <= 0.0) {
                    const double lk = lambda[pcols[k]];
                    const double denom = lk - zk;
                    const double step = (denom > 0.0) ? lk / denom : 0.0;
                    if (step < alpha) {
                        alpha = step;
                        blocker = pcols[k];
                    }
                }
            }
            if (blocker < 0) {  // cannot happen: some z entry was nonpositive
                alpha = 0.0;
                blocker = pcols.front();
            }
            for (std::size_t k = 0; k < pcols.size(); ++k) {
                const int j = pcols[k];
                lambda[j] += alpha * (z[static_cast<Eigen::Index>(k)] - lambda[j]);
            }
            lambda[blocker] = 0.0;
            passive[static_cast<std::size_t>(blocker)] = false;
            for (std::size_t k = 0; k < pcols.size(); ++k) {
                const int j = pcols[k];
                if (passive[static_cast<std::size_t>(j)] && lambda[j] <= 1e-14 * grad_scale) {
                    lambda[j] = 0.0;
                    passive[static_cast<std::size_t>(j)] = false;
                }
            }
            bool any_passive = false;
            for (Eigen::Index j = 0; j < n; ++j)
                any_passive = any_passive || passive[static_cast<std::size_t>(j)];
            if (!any_passive) break;
        }
    }
    return lambda;
}

double nnls_kkt_residual(const Matrix& A, const Vector& b, const Vector& lambda,
                         const Tolerances& tol) {
    if (A.rows() != b.size() || A.cols() != lambda.size())
        throw DimensionError("nnls_kkt_residual: shape mismatch");
    const Vector r = A * lambda - b;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        const double g = A.col(j).dot(r);
        const double scale = 1.0 + b.norm() + A.col(j).norm() * r.norm();
        const double viol = (lambda[j] > tol.zero) ? std::abs(g) : std::max(0.0, -g);
        worst = std::max(worst, viol / scale);
    }
    return worst;
}

namespace {

// Dense tableau simplex with explicit basis bookkeeping; maximizes <c, v>.
// Bland's rule: first eligible entering column, smallest basic index among
// tied leaving rows.
struct Tableau {
    Matrix A;                // m x n, kept in reduced form
    Vector b;                // m, kept nonnegative
    std::vector<int> basis;  // column basic in each row

    bool run(const Vector& c, const std::vector<bool>& allowed, double opt_tol, double piv_tol,
             int cap, int& iters) {
        const Eigen::Index m = A.rows();
        const Eigen::Index n = A.cols();
        std::vector<bool> in_basis(static_cast<std::size_t>(n), false);
        for (int j : basis) in_basis[static_cast<std::size_t>(j)] = true;
        Vector y(m);
        while (true) {
            if (++iters > cap) throw ConvergenceError("lp_solve: simplex iteration cap exceeded");

            for (Eigen::Index i = 0; i < m; ++i) y[i] = c[basis[static_cast<std::size_t>(i)]];
            int enter = -1;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (!allowed[static_cast<std::size_t>(j)] || in_basis[static_cast<std::size_t>(j)])
                    continue;
                if (c[j] - y.dot(A.col(j)) > opt_tol) {
                    enter = static_cast<int>(j);
                    break;
                }
            }
            if (enter < 0) return true;  // optimal

            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m; ++i) {
                const double a = A(i, enter);
                if (a <= piv_tol) continue;
                const double ratio = b[i] / a;
                if (leave < 0 || ratio < best_ratio - piv_tol) {
                    best_ratio = ratio;
                    leave = static_cast<int>(i);
                } else if (ratio <= best_ratio + piv_tol &&
                           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)]) {
                    leave = static_cast<int>(i);
                }
            }
            if (leave < 0) return false;  // entering column has no positive pivot: unbounded

            in_basis[static_cast<std::size_t>(basis[static_cast<std::size_t>(leave)])] = false;
            in_basis[static_cast<std::size_t>(enter)] = true;
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        const double p = A(row, col);
        A.row(row) /= p;
        b[row] /= p;
        if (b[row] < 0.0) b[row] = 0.0;  // roundoff clip; ratio test keeps b >= 0
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
            if (static_cast<int>(i) == row) continue;
            const double f = A(i, col);
            if (f != 0.0) {
                A.row(i) -= f * A.row(row);
                b[i] -= f * b[row];
                A(i, col) = 0.0;
            }
        }
        basis[static_cast<std::size_t>(row)] = col;
    }
};

}  // namespace

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "Optimal";
        case LpStatus::Infeasible: return "Infeasible";
        case LpStatus::Unbounded: return "Unbounded";
    }
    return "unknown";
}

LpResult lp_solve(const LpProblem& p, const Tolerances& tol) {
    tol.validate();
    require_finite(p.eq_matrix, "lp_solve: A_eq");
    require_finite(p.eq_rhs, "lp_solve: b_eq");
    require_finite(p.objective, "lp_solve: c");
    const Eigen::Index m = p.eq_matrix.rows();
    const Eigen::Index n = p.eq_matrix.cols();
    if (p.eq_rhs.size() != m) throw DimensionError("lp_solve: rows(A_eq) != dim(b_eq)");
    if (p.objective.size() != n) throw DimensionError("lp_solve: dim(c) != cols(A_eq)");

    double amax = 0.0;
    if (m > 0 && n > 0) amax = p.eq_matrix.cwiseAbs().maxCoeff();
    if (m > 0) amax = std::max(amax, p.eq_rhs.cwiseAbs().maxCoeff());
    const double data_scale = 1.0 + amax;
    const double feas_tol = tol.feas * data_scale;
    const double piv_tol = 1e-11 * data_scale;
    const int cap = 2000 + 200 * static_cast<int>(m + n);

    Tableau t;
    t.A.resize(m, n + m);
    t.b = p.eq_rhs;
    t.A.leftCols(n) = p.eq_matrix;
    t.A.rightCols(m).setZero();
    for (Eigen::Index i = 0; i < m; ++i) {
        if (t.b[i] < 0.0) {
            t.A.row(i).head(n) *= -1.0;
            t.b[i] = -t.b[i];
        }
        t.A(i, n + i) = 1.0;
        t.basis.push_back(static_cast<int>(n + i));
    }

    LpResult result;
    int iters = 0;

    {  // phase 1: drive the artificial variables to zero
        Vector phase1_c = Vector::Zero(n + m);
        phase1_c.tail(m).setConstant(-1.0);
        std::vector<bool> allowed(static_cast<std::size_t>(n + m), true);
        t.run(phase1_c, allowed, tol.opt * data_scale, piv_tol, cap, iters);

        double artificial_sum = 0.0;
        for (Eigen::Index i = 0; i < m; ++i)
            if (t.basis[static_cast<std::size_t>(i)] >= static_cast<int>(n))
                artificial_sum += t.b[i];
        if (artificial_sum > feas_tol * static_cast<double>(std::max<Eigen::Index>(m, 1))) {
            result.status = LpStatus::Infeasible;
            result.iterations = iters;
            return result;
        }
        for (Eigen::Index i = 0; i < m; ++i) {
            if (t.basis[static_cast<std::size_t>(i)] < static_cast<int>(n)) continue;
            int col = -1;
            for (Eigen::Index j = 0; j < n; ++j)
                if (std::abs(t.A(i, j)) > piv_tol) { col = static_cast<int>(j); break; }
            if (col >= 0) t.pivot(static_cast<int>(i), col);
            // otherwise the row is redundant; the artificial stays basic at zero
            // and is barred from growing in phase 2.
        }
    }

    {  // phase 2: original objective over original columns
        Vector phase2_c = Vector::Zero(n + m);
        phase2_c.head(n) = p.objective;
        std::vector<bool> allowed(static_cast<std::size_t>(n + m), false);
        for (Eigen::Index j = 0; j < n; ++j) allowed[static_cast<std::size_t>(j)] = true;
        const bool bounded = t.run(phase2_c, allowed, tol.opt * data_scale, piv_tol, cap, iters);
        result.iterations = iters;
        if (!bounded) {
            result.status = LpStatus::Unbounded;
            return result;
        }
    }

    Vector v = Vector::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) {
        const int j = t.basis[static_cast<std::size_t>(i)];
        if (j < static_cast<int>(n)) v[j] = t.b[i];
    }
    const double eq_viol =
        (m > 0) ? (p.eq_matrix * v - p.eq_rhs).cwiseAbs().maxCoeff() : 0.0;
    if (eq_viol > 100.0 * tol.feas * (1.0 + p.eq_rhs.norm()))
        throw VerificationError("lp_solve: optimal point violates equalities", eq_viol);
    result.status = LpStatus::Optimal;
    result.point = v;
    result.value = p.objective.dot(v);
    return result;
}

}  // namespace conelat
