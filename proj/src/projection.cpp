#include "conelat/projection.hpp"

#include <cmath>

#include "conelat/numerics.hpp"

namespace conelat {

namespace {

Vector project_point(const ConeSpec& K, const Vector& x, const Tolerances& tol) {
    switch (K.kind()) {
        case ConeKind::Orthant:
            return x.cwiseMax(0.0);
        case ConeKind::Lorentz: {
            const Eigen::Index n = x.size();
            const double t = x[n - 1];
            const Vector u = x.head(n - 1);
            const double un = u.norm();
            if (un <= t) return x;
            Vector p = Vector::Zero(n);
            if (un <= -t) return p;  // polar region, includes u = 0 with t < 0
            const double alpha = 0.5 * (un + t);
            p.head(n - 1) = (alpha / un) * u;
            p[n - 1] = alpha;
            return p;
        }
        case ConeKind::Generators:
        case ConeKind::Pyramid:
        case ConeKind::Diamond: {
            const Matrix Gt = K.generator_matrix().transpose();
            return Gt * nnls(Gt, x, tol);
        }
        case ConeKind::Halfspaces: {
            // Moreau route: P_K x = x + P_{K*}(-x), K* generated by the normals
            const Matrix Gt = K.rows().transpose();
            return x + Gt * nnls(Gt, -x, tol);
        }
    }
    throw std::logic_error("project: unreachable");
}

// Worst violation of the Eq.-(4.1) nearest-point test for candidate p.
double characterization_residual(const ConeSpec& K, const Vector& x, const Vector& p,
                                 const Tolerances& tol) {
    const Vector r = x - p;
    double worst = std::abs(r.dot(p));
    switch (K.kind()) {
        case ConeKind::Lorentz:
            // r must lie in the polar cone -L (self-dual L)
            worst = std::max(worst, distance_to_cone(K, -r, tol));
            worst = std::max(worst, distance_to_cone(K, p, tol));
            break;
        case ConeKind::Halfspaces: {
            const Matrix A = K.rows();
            for (Eigen::Index i = 0; i < A.rows(); ++i)
                worst = std::max(worst, -A.row(i).dot(p));  // p in K
            // -r must be a nonnegative combination of the normal rows
            const Matrix Gt = A.transpose();
            const Vector mu = nnls(Gt, -r, tol);
            worst = std::max(worst, (Gt * mu + r).norm());
            break;
        }
        default: {
            const Matrix G = K.generator_matrix();
            for (Eigen::Index i = 0; i < G.rows(); ++i)
                worst = std::max(worst, r.dot(G.row(i).transpose()));
            worst = std::max(worst, distance_to_cone(K, p, tol));
            break;
        }
    }
    return worst;
}

}  // namespace

ProjectionResult project(const ConeSpec& K, const Vector& x, const Tolerances& tol) {
    require_dim(x, K.dim(), "project: x");
    require_finite(x, "project: x");
    ProjectionResult result;
    result.point = project_point(K, x, tol);
    result.distance = (x - result.point).norm();
    result.characterization_residual = characterization_residual(K, x, result.point, tol);
    const double scale = 1.0 + x.norm() + result.point.norm();
    if (result.characterization_residual > tol.feas * scale)
        throw VerificationError("project: nearest-point characterization failed (residual " +
                                    std::to_string(result.characterization_residual) + ", cone " +
                                    to_string(K.kind()) + ")",
                                result.characterization_residual);
    return result;
}

Vector project_translated(const ConeSpec& K, const Vector& base, const Vector& y,
                          const Tolerances& tol) {
    require_dim(base, K.dim(), "project_translated: base");
    require_dim(y, K.dim(), "project_translated: y");
    return base + project(K, y - base, tol).point;
}

Vector project_dual(const ConeSpec& K, const Vector& x, const Tolerances& tol) {
    require_dim(x, K.dim(), "project_dual: x");
    const Vector p = x + project(K, -x, tol).point;
    const ConeSpec dual = dual_cone(K);
    if (!contains(dual, p, tol)) {
        const double d = distance_to_cone(dual, p, tol);
        throw VerificationError("project_dual: result escapes the dual cone", d);
    }
    return p;
}

NearestCheck verify_nearest(const ConeSpec& K, const Vector& x, const Vector& p,
                            const Tolerances& tol) {
    require_dim(x, K.dim(), "verify_nearest: x");
    require_dim(p, K.dim(), "verify_nearest: p");
    NearestCheck check;
    // worst violation over y = 0 and y ranging over the generator directions
    const Vector r = x - p;
    double worst = std::max(0.0, -r.dot(p));  // <p - x, p - 0> <= 0
    switch (K.kind()) {
        case ConeKind::Lorentz:
            worst = std::max(worst, distance_to_cone(K, -r, tol));
            worst = std::max(worst, distance_to_cone(K, p, tol));
            break;
        case ConeKind::Halfspaces:
            worst = std::max(worst, characterization_residual(K, x, p, tol));
            break;
        default: {
            const Matrix G = K.generator_matrix();
            for (Eigen::Index i = 0; i < G.rows(); ++i)
                worst = std::max(worst, r.dot(G.row(i).transpose()));
            worst = std::max(worst, distance_to_cone(K, p, tol));
            break;
        }
    }
    check.residual = worst;
    check.ok = worst <= tol.feas * (1.0 + x.norm() + p.norm());
    return check;
}

}  // namespace conelat
