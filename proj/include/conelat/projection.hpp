// Metric projection onto closed convex cones, its translation property,
// dual-cone projection via the Moreau identity, and verification of the
// nearest-point characterization. Every projection self-verifies and fails
// loudly; all downstream certificates rest on this.

#ifndef CONELAT_PROJECTION_HPP
#define CONELAT_PROJECTION_HPP

#include "conelat/cones.hpp"
#include "conelat/types.hpp"

namespace conelat {

struct ProjectionResult {
    Vector point;                         // P_K x
    double distance = 0.0;                // ||x - point||
    double characterization_residual = 0.0;  // worst violation of the nearest-point test
};

ProjectionResult project(const ConeSpec& K, const Vector& x, const Tolerances& tol = {});

// P_{base+K}(y) = base + P_K(y - base)
Vector project_translated(const ConeSpec& K, const Vector& base, const Vector& y,
                          const Tolerances& tol = {});

// P_{K*}(x) = x + P_K(-x); verified to lie in dual_cone(K)
Vector project_dual(const ConeSpec& K, const Vector& x, const Tolerances& tol = {});

struct NearestCheck {
    bool ok = false;
    double residual = 0.0;
};

// Checks p in K and <p - x, p - y> <= 0 with y ranging over the generators
// of K and y = 0 (sufficient for cones: <x-p, g> <= 0 for all g and
// <x-p, p> = 0). Never throws; a failed check reports its worst residual.
NearestCheck verify_nearest(const ConeSpec& K, const Vector& x, const Vector& p,
                            const Tolerances& tol = {});

}  // namespace conelat

#endif
