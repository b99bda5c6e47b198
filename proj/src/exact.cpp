#include "conelat/exact.hpp"

#include <gmpxx.h>

#include <cmath>
#include <vector>

namespace conelat {

bool is_integral(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] != std::floor(v[i]) || std::abs(v[i]) > 1e15) return false;
    return true;
}

bool is_integral(const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != std::floor(m(i, j)) || std::abs(m(i, j)) > 1e15) return false;
    return true;
}

namespace {

using Rat = mpq_class;

// Phase-1 feasibility for  M * lambda = rhs, lambda >= 0  over rationals.
// Columns of M are the generators (M = G^T). Artificial variables give the
// starting basis; Bland's rule guarantees termination.
bool rational_feasible(std::vector<std::vector<Rat>> M, std::vector<Rat> rhs) {
    const std::size_t m = rhs.size();
    const std::size_t n = M.empty() ? 0 : M[0].size();

    // tableau: columns [lambda | artificials], rows m
    const std::size_t total = n + m;
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(total, Rat(0)));
    std::vector<int> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = rhs[i] < 0;
        for (std::size_t j = 0; j < n; ++j) T[i][j] = flip ? -M[i][j] : M[i][j];
        if (flip) rhs[i] = -rhs[i];
        T[i][n + i] = 1;
        basis[i] = static_cast<int>(n + i);
    }

    // maximize -(sum of artificials); c_j = 0 for lambda, -1 for artificials
    auto cost = [&](int j) { return j >= static_cast<int>(n) ? Rat(-1) : Rat(0); };

    while (true) {
        int enter = -1;
        for (std::size_t j = 0; j < total; ++j) {
            bool basic = false;
            for (std::size_t i = 0; i < m; ++i)
                if (basis[i] == static_cast<int>(j)) { basic = true; break; }
            if (basic) continue;
            Rat reduced = cost(static_cast<int>(j));
            for (std::size_t i = 0; i < m; ++i) reduced -= cost(basis[i]) * T[i][j];
            if (reduced > 0) { enter = static_cast<int>(j); break; }  // Bland
        }
        if (enter < 0) break;

        int leave = -1;
        Rat best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][static_cast<std::size_t>(enter)] > 0) {
                Rat ratio = rhs[i] / T[i][static_cast<std::size_t>(enter)];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[static_cast<std::size_t>(leave)])) {
                    best_ratio = ratio;
                    leave = static_cast<int>(i);
                }
            }
        }
        if (leave < 0) break;  // unbounded phase-1 direction cannot occur; stop defensively

        const std::size_t r = static_cast<std::size_t>(leave);
        const Rat p = T[r][static_cast<std::size_t>(enter)];
        for (std::size_t j = 0; j < total; ++j) T[r][j] /= p;
        rhs[r] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            const Rat f = T[i][static_cast<std::size_t>(enter)];
            if (f != 0) {
                for (std::size_t j = 0; j < total; ++j) T[i][j] -= f * T[r][j];
                rhs[i] -= f * rhs[r];
            }
        }
        basis[r] = enter;
    }

    Rat artificial_sum(0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= static_cast<int>(n)) artificial_sum += rhs[i];
    return artificial_sum == 0;
}

}  // namespace

bool in_generated_cone_exact(const Matrix& G, const Vector& x) {
    if (G.cols() != x.size())
        throw DimensionError("in_generated_cone_exact: generator/vector dimension mismatch");
    if (!is_integral(G) || !is_integral(x))
        throw std::invalid_argument("in_generated_cone_exact: data must be integral");

    const std::size_t m = static_cast<std::size_t>(x.size());
    const std::size_t g = static_cast<std::size_t>(G.rows());
    std::vector<std::vector<Rat>> M(m, std::vector<Rat>(g));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < g; ++j)
            M[i][j] = Rat(static_cast<long>(G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))));
    std::vector<Rat> rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = Rat(static_cast<long>(x[static_cast<Eigen::Index>(i)]));
    return rational_feasible(std::move(M), std::move(rhs));
}

}  // namespace conelat
