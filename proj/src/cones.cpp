#include "conelat/cones.hpp"

#include <cmath>
#include <utility>

#include "conelat/exact.hpp"
#include "conelat/numerics.hpp"

namespace conelat {

namespace {

Matrix pyramid_rows() {
    Matrix g(4, 3);
    g << 1, 1, 1,
        -1, 1, 1,
        -1, -1, 1,
         1, -1, 1;
    return g;
}

Matrix diamond_rows() {
    Matrix g(4, 3);
    g << 1, 0, 1,
        -1, 0, 1,
         0, 1, 1,
         0, -1, 1;
    return g;
}

}  // namespace

std::string to_string(ConeKind k) {
    switch (k) {
        case ConeKind::Generators: return "generators";
        case ConeKind::Halfspaces: return "halfspaces";
        case ConeKind::Orthant: return "orthant";
        case ConeKind::Lorentz: return "lorentz";
        case ConeKind::Pyramid: return "pyramid";
        case ConeKind::Diamond: return "diamond";
    }
    return "unknown";
}

bool ConeSpec::has_generators() const {
    return kind_ != ConeKind::Halfspaces && kind_ != ConeKind::Lorentz;
}

Matrix ConeSpec::generator_matrix() const {
    switch (kind_) {
        case ConeKind::Orthant: return Matrix::Identity(dim_, dim_);
        case ConeKind::Generators:
        case ConeKind::Pyramid:
        case ConeKind::Diamond: return rows_;
        default:
            throw RepresentationError("cone of kind " + to_string(kind_) +
                                      " has no finite generator representation");
    }
}

Matrix ConeSpec::halfspace_matrix() const {
    switch (kind_) {
        case ConeKind::Orthant: return Matrix::Identity(dim_, dim_);
        case ConeKind::Halfspaces: return rows_;
        case ConeKind::Pyramid: return diamond_rows();  // pyramid = {x : <d,x> >= 0, d diamond generator}
        case ConeKind::Diamond: return pyramid_rows();
        default:
            throw RepresentationError("cone of kind " + to_string(kind_) +
                                      " has no finite halfspace representation");
    }
}

ConeSpec ConeSpec::orthant(int n) {
    if (n < 1) throw std::invalid_argument("orthant: dimension must be >= 1");
    return ConeSpec(ConeKind::Orthant, n, Matrix());
}

ConeSpec ConeSpec::lorentz(int n) {
    if (n < 2) throw std::invalid_argument("lorentz: dimension must be >= 2");
    return ConeSpec(ConeKind::Lorentz, n, Matrix());
}

ConeSpec ConeSpec::pyramid() { return ConeSpec(ConeKind::Pyramid, 3, pyramid_rows()); }

ConeSpec ConeSpec::diamond() { return ConeSpec(ConeKind::Diamond, 3, diamond_rows()); }

ConeSpec ConeSpec::generators(Matrix rows, const Tolerances& tol) {
    require_finite(rows, "generators");
    if (rows.rows() < 1 || rows.cols() < 1)
        throw std::invalid_argument("generators: empty generator set");
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
        if (rows.row(i).norm() == 0.0)
            throw std::invalid_argument("generators: generator row " + std::to_string(i) +
                                        " is zero");
    const int dim = static_cast<int>(rows.cols());
    ConeSpec cone(ConeKind::Generators, dim, std::move(rows));
    const PointednessResult pr = is_pointed(cone, tol);
    if (!pr.pointed) {
        std::string msg = "generators: cone is not pointed; witness direction (";
        for (Eigen::Index i = 0; i < pr.witness.size(); ++i)
            msg += (i ? "," : "") + std::to_string(pr.witness[i]);
        throw std::invalid_argument(msg + ") lies in K and -K");
    }
    return cone;
}

ConeSpec ConeSpec::halfspaces(Matrix rows, const Tolerances& tol) {
    require_finite(rows, "halfspaces");
    if (rows.rows() < 1 || rows.cols() < 1)
        throw std::invalid_argument("halfspaces: empty normal set");
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
        if (rows.row(i).norm() == 0.0)
            throw std::invalid_argument("halfspaces: normal row " + std::to_string(i) + " is zero");
    const int dim = static_cast<int>(rows.cols());
    ConeSpec cone(ConeKind::Halfspaces, dim, std::move(rows));
    const PointednessResult pr = is_pointed(cone, tol);
    if (!pr.pointed) {
        std::string msg = "halfspaces: cone is not pointed; witness direction (";
        for (Eigen::Index i = 0; i < pr.witness.size(); ++i)
            msg += (i ? "," : "") + std::to_string(pr.witness[i]);
        throw std::invalid_argument(msg + ") lies in K and -K");
    }
    return cone;
}

bool ConeSpec::same_representation(const ConeSpec& other) const {
    if (kind_ != other.kind_ || dim_ != other.dim_) return false;
    if (rows_.rows() != other.rows_.rows() || rows_.cols() != other.rows_.cols()) return false;
    return rows_.size() == 0 || rows_ == other.rows_;
}

ConeSpec make_cone(const nlohmann::json& spec, const Tolerances& tol) {
    if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
        throw std::invalid_argument("cone spec: expected an object with a \"type\" field");
    const std::string type = spec["type"].get<std::string>();

    auto rows_from = [&spec]() {
        if (!spec.contains("rows") || !spec["rows"].is_array() || spec["rows"].empty())
            throw std::invalid_argument("cone spec: \"rows\" must be a nonempty array of arrays");
        const auto& jrows = spec["rows"];
        const std::size_t ncols = jrows[0].size();
        if (ncols == 0) throw std::invalid_argument("cone spec: rows must be nonempty");
        Matrix m(static_cast<Eigen::Index>(jrows.size()), static_cast<Eigen::Index>(ncols));
        for (std::size_t i = 0; i < jrows.size(); ++i) {
            if (!jrows[i].is_array() || jrows[i].size() != ncols)
                throw std::invalid_argument("cone spec: ragged \"rows\" array");
            for (std::size_t j = 0; j < ncols; ++j)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    jrows[i][j].get<double>();
        }
        return m;
    };

    if (type == "orthant" || type == "lorentz") {
        if (!spec.contains("dim") || !spec["dim"].is_number_integer())
            throw std::invalid_argument("cone spec: \"" + type + "\" requires integer \"dim\"");
        const int n = spec["dim"].get<int>();
        return type == "orthant" ? ConeSpec::orthant(n) : ConeSpec::lorentz(n);
    }
    if (type == "pyramid") return ConeSpec::pyramid();
    if (type == "diamond") return ConeSpec::diamond();
    if (type == "generators") return ConeSpec::generators(rows_from(), tol);
    if (type == "halfspaces") return ConeSpec::halfspaces(rows_from(), tol);
    throw std::invalid_argument("cone spec: unknown type \"" + type + "\"");
}

nlohmann::json cone_to_json(const ConeSpec& cone) {
    nlohmann::json j;
    j["type"] = to_string(cone.kind());
    switch (cone.kind()) {
        case ConeKind::Orthant:
        case ConeKind::Lorentz:
            j["dim"] = cone.dim();
            break;
        case ConeKind::Generators:
        case ConeKind::Halfspaces: {
            nlohmann::json rows = nlohmann::json::array();
            for (Eigen::Index i = 0; i < cone.rows().rows(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (Eigen::Index k = 0; k < cone.rows().cols(); ++k) row.push_back(cone.rows()(i, k));
                rows.push_back(row);
            }
            j["rows"] = rows;
            break;
        }
        default:
            break;  // pyramid/diamond carry no parameters
    }
    return j;
}

bool contains(const ConeSpec& K, const Vector& x, const Tolerances& tol) {
    require_dim(x, K.dim(), "contains: x");
    const double scale = 1.0 + x.norm();
    switch (K.kind()) {
        case ConeKind::Orthant:
            return x.minCoeff() >= -tol.feas * scale;
        case ConeKind::Lorentz: {
            const Eigen::Index n = x.size();
            const double t = x[n - 1];
            const double u = x.head(n - 1).norm();
            return u <= t + tol.feas * scale;
        }
        case ConeKind::Halfspaces:
        case ConeKind::Pyramid:
        case ConeKind::Diamond: {
            const Matrix A = K.halfspace_matrix();
            for (Eigen::Index i = 0; i < A.rows(); ++i) {
                const double row_scale = 1.0 + A.row(i).norm() * x.norm();
                if (A.row(i).dot(x) < -tol.feas * row_scale) return false;
            }
            return true;
        }
        case ConeKind::Generators:
            return distance_to_cone(K, x, tol) <= tol.feas * scale;
    }
    return false;
}

double distance_to_cone(const ConeSpec& K, const Vector& x, const Tolerances& tol) {
    require_dim(x, K.dim(), "distance_to_cone: x");
    switch (K.kind()) {
        case ConeKind::Orthant:
            return x.cwiseMin(0.0).norm();
        case ConeKind::Lorentz: {
            const Eigen::Index n = x.size();
            const double t = x[n - 1];
            const double u = x.head(n - 1).norm();
            if (u <= t) return 0.0;
            if (u <= -t) return x.norm();
            return (u - t) / std::sqrt(2.0);
        }
        case ConeKind::Generators:
        case ConeKind::Pyramid:
        case ConeKind::Diamond: {
            const Matrix Gt = K.generator_matrix().transpose();
            const Vector lambda = nnls(Gt, x, tol);
            return (Gt * lambda - x).norm();
        }
        case ConeKind::Halfspaces: {
            // dist(x, K) = ||P_{K*}(-x)|| with K* generated by the normal rows
            const Matrix Gt = K.rows().transpose();
            const Vector lambda = nnls(Gt, -x, tol);
            return (Gt * lambda).norm();
        }
    }
    return 0.0;
}

bool contains_exact(const ConeSpec& K, const Vector& x) {
    require_dim(x, K.dim(), "contains_exact: x");
    if (!is_integral(x)) throw std::invalid_argument("contains_exact: x must be integral");
    switch (K.kind()) {
        case ConeKind::Orthant:
            return x.minCoeff() >= 0.0;
        case ConeKind::Lorentz: {
            const Eigen::Index n = x.size();
            const double t = x[n - 1];
            if (t < 0.0) return false;
            return x.head(n - 1).squaredNorm() <= t * t;
        }
        case ConeKind::Halfspaces:
        case ConeKind::Pyramid:
        case ConeKind::Diamond: {
            const Matrix A = K.halfspace_matrix();
            if (!is_integral(A))
                throw std::invalid_argument("contains_exact: halfspace data must be integral");
            for (Eigen::Index i = 0; i < A.rows(); ++i)
                if (A.row(i).dot(x) < 0.0) return false;
            return true;
        }
        case ConeKind::Generators:
            return in_generated_cone_exact(K.rows(), x);
    }
    return false;
}

ConeSpec dual_cone(const ConeSpec& K) {
    switch (K.kind()) {
        case ConeKind::Orthant: return ConeSpec::orthant(K.dim());
        case ConeKind::Lorentz: return ConeSpec::lorentz(K.dim());
        case ConeKind::Pyramid: return ConeSpec::diamond();
        case ConeKind::Diamond: return ConeSpec::pyramid();
        case ConeKind::Generators: return ConeSpec::halfspaces(K.rows());
        case ConeKind::Halfspaces: return ConeSpec::generators(K.rows());
    }
    throw std::logic_error("dual_cone: unreachable");
}

bool contains_cone(const ConeSpec& K1, const ConeSpec& K2, const Tolerances& tol) {
    if (K1.dim() != K2.dim())
        throw DimensionError("contains_cone: ambient dimensions differ");
    if (K1.same_representation(K2)) return true;
    if (!K1.has_generators())
        throw RepresentationError(
            "contains_cone: inner cone must have a generator representation");
    const Matrix G = K1.generator_matrix();
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        if (!contains(K2, G.row(i).transpose(), tol)) return false;
    return true;
}

PointednessResult is_pointed(const ConeSpec& K, const Tolerances& tol) {
    switch (K.kind()) {
        case ConeKind::Orthant:
        case ConeKind::Lorentz:
            return PointednessResult{};  // pointed by construction
        case ConeKind::Halfspaces:
            return pointedness_of_halfspaces(K.rows(), tol);
        default:
            return pointedness_of_generators(K.generator_matrix(), tol);
    }
}

PointednessResult pointedness_of_halfspaces(const Matrix& rows, const Tolerances& tol) {
    (void)tol;
    PointednessResult result;
    // lineality space of {x : Ax >= 0} is null(A)
    Eigen::FullPivLU<Matrix> lu(rows);
    lu.setThreshold(1e-10);
    if (lu.rank() < rows.cols()) {
        result.pointed = false;
        result.witness = lu.kernel().col(0);
        result.witness /= result.witness.norm();
    }
    return result;
}

// Decide K cap -K = {0} with 2n box-bounded LP probes maximizing +-d_i over
// {d = G^T lambda = -G^T mu, 0 <= lambda, mu <= 1}.
PointednessResult pointedness_of_generators(const Matrix& G, const Tolerances& tol) {
    PointednessResult result;
    const Eigen::Index n = G.cols();
    const Eigen::Index g = G.rows();
    // variables: lambda (g), mu (g), slacks s (g), r (g)
    const Eigen::Index nv = 4 * g;
    const Eigen::Index nr = n + 2 * g;
    Matrix A = Matrix::Zero(nr, nv);
    Vector b = Vector::Zero(nr);
    A.block(0, 0, n, g) = G.transpose();
    A.block(0, g, n, g) = G.transpose();
    for (Eigen::Index i = 0; i < g; ++i) {
        A(n + i, i) = 1.0;
        A(n + i, 2 * g + i) = 1.0;
        b[n + i] = 1.0;
        A(n + g + i, g + i) = 1.0;
        A(n + g + i, 3 * g + i) = 1.0;
        b[n + g + i] = 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (const double sign : {1.0, -1.0}) {
            LpProblem p;
            p.eq_matrix = A;
            p.eq_rhs = b;
            p.objective = Vector::Zero(nv);
            p.objective.head(g) = sign * G.col(i);
            const LpResult lr = lp_solve(p, tol);
            if (lr.status != LpStatus::Optimal)
                throw VerificationError("is_pointed: probe LP did not solve", 0.0);
            if (lr.value > tol.zero) {
                result.pointed = false;
                result.witness = G.transpose() * lr.point.head(g);
                return result;
            }
        }
    }
    return result;
}

ConePair make_cone_pair(ConeSpec specific, ConeSpec initial, const Tolerances& tol) {
    if (specific.dim() != initial.dim())
        throw DimensionError("cone pair: ambient dimensions differ");
    if (!specific.same_representation(initial) && !contains_cone(specific, initial, tol))
        throw std::invalid_argument(
            "cone pair: specific cone is not contained in the initial cone");
    return ConePair{std::move(specific), std::move(initial)};
}

}  // namespace conelat
