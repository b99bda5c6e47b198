// Deterministic sample streams for the property checkers: standard normal
// ambient points plus targeted cone-boundary points (nonnegative
// combinations of at most two generators).

#ifndef CONELAT_SAMPLING_HPP
#define CONELAT_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "conelat/cones.hpp"
#include "conelat/types.hpp"

namespace conelat {

class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double normal() { return normal_(rng_); }
    double uniform(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng_);
    }
    int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

    Vector ambient(int n) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    Vector integer_ambient(int n, int lo = -5, int hi = 5) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = static_cast<double>(uniform_int(lo, hi));
        return v;
    }

    // Random element of K (nonnegative generator combination; Lorentz points
    // are sampled as scaled interior/boundary rays).
    Vector in_cone(const ConeSpec& K) {
        if (K.kind() == ConeKind::Lorentz) {
            Vector u = ambient(K.dim() - 1);
            const double stretch = uniform(0.0, 1.5);
            Vector v(K.dim());
            v.head(K.dim() - 1) = u;
            v[K.dim() - 1] = u.norm() * (stretch >= 1.0 ? 1.0 : 1.0 / std::max(stretch, 0.1));
            return v * uniform(0.0, 2.0);
        }
        const Matrix G = K.generator_matrix();
        Vector lambda(G.rows());
        for (Eigen::Index i = 0; i < G.rows(); ++i) lambda[i] = std::abs(normal());
        return G.transpose() * lambda;
    }

    // Boundary-stressing element: nonnegative combination of at most two
    // generators (a boundary ray segment for the built-in cones).
    Vector boundary(const ConeSpec& K) {
        if (K.kind() == ConeKind::Lorentz) {
            Vector u = ambient(K.dim() - 1);
            if (u.norm() == 0.0) u[0] = 1.0;
            Vector v(K.dim());
            v.head(K.dim() - 1) = u;
            v[K.dim() - 1] = u.norm();
            return v * std::abs(normal());
        }
        const Matrix G = K.generator_matrix();
        const int i = uniform_int(0, static_cast<int>(G.rows()) - 1);
        const int j = uniform_int(0, static_cast<int>(G.rows()) - 1);
        return std::abs(normal()) * G.row(i).transpose() + std::abs(normal()) * G.row(j).transpose();
    }

    // Ambient stream mixing generic normal points with boundary differences;
    // every third sample stresses cone boundaries.
    Vector mixed_ambient(const ConeSpec& K, long index) {
        if (index % 3 == 2) return boundary(K) - boundary(K);
        return ambient(K.dim());
    }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace conelat

#endif
