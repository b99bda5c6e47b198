// Core scalar/vector types, tolerances and error taxonomy shared by all
// conelat modules.

#ifndef CONELAT_TYPES_HPP
#define CONELAT_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace conelat {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Relative tolerances used throughout. Feasibility and optimality slacks are
// always scaled by (1 + norm of the data involved); `zero` is the magnitude
// below which a scalar counts as zero.
struct Tolerances {
    double feas = 1e-9;
    double opt = 1e-9;
    double zero = 1e-8;

    void validate() const {
        if (!(feas > 0.0) || !(opt > 0.0) || !(zero > 0.0))
            throw std::invalid_argument("Tolerances: all entries must be strictly positive");
        if (!(feas <= zero))
            throw std::invalid_argument("Tolerances: feas must not exceed zero threshold");
    }
};

// Dimension or shape mismatch between inputs.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A cone representation does not support the requested operation
// (e.g. generator matrix of a Lorentz cone).
class RepresentationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// An iterative kernel hit its iteration cap without converging. Never used
// to paper over a wrong answer; callers see the failure.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A self-verification step failed (projection characterization, decomposition
// residual, ...). Carries the offending residual in the message.
class VerificationError : public std::runtime_error {
  public:
    VerificationError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_ = 0.0;
};

// A certificate contradicts a theorem-level invariant (e.g. a refuted
// minimality certificate for a metric projection).
class InvariantViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": entries must be finite");
}

inline void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": entries must be finite");
}

inline void require_dim(const Vector& v, Eigen::Index n, const char* what) {
    if (v.size() != n)
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(n) +
                             ", got " + std::to_string(v.size()));
}

}  // namespace conelat

#endif
