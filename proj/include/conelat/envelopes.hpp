// Mixed envelopes realized as translated-cone projections, upper/lower
// parts, the order form of the Moreau decomposition, lattice-like operation
// aliases, and per-clause checkers for the envelope and parts theorems.

#ifndef CONELAT_ENVELOPES_HPP
#define CONELAT_ENVELOPES_HPP

#include <cstdint>

#include "conelat/cones.hpp"
#include "conelat/report.hpp"
#include "conelat/types.hpp"

namespace conelat {

// ProjectionRealized: only the generalized structure is guaranteed; the
// envelopes are the distance-minimal selections and clauses the theory
// restricts to genuine mixed lattice spaces are recorded, not asserted.
// Abstract: the context is additionally validated as a genuine mixed lattice
// space (the vector-lattice orthant case); every clause is asserted.
enum class Realization { ProjectionRealized, Abstract };

struct MixedLatticeContext {
    ConePair pair;  // specific cone S, initial cone P = dual(S)
    Realization realization = Realization::ProjectionRealized;
    Tolerances tol;

    const ConeSpec& S() const { return pair.specific; }
    const ConeSpec& P() const { return pair.initial; }
    int dim() const { return pair.specific.dim(); }
    bool genuine_lattice() const { return realization == Realization::Abstract; }

    // P defaults to dual_cone(S); a supplied initial cone must be the dual
    // pair partner (membership-equivalent).
    static MixedLatticeContext projection_realized(ConeSpec specific, Tolerances tol = {});
    static MixedLatticeContext projection_realized(ConeSpec specific, ConeSpec initial,
                                                   Tolerances tol = {});
    // Vector-lattice context (self-dual orthant order), every clause asserted.
    static MixedLatticeContext orthant_lattice(int n, Tolerances tol = {});
};

// x v y = P_{x+S}(y) = x + P_S(y - x); result - x in S and result - y in P.
Vector upper_envelope(const MixedLatticeContext& ctx, const Vector& x, const Vector& y);

// x ^ y = P_{x-S}(y) = x - P_S(x - y); x - result in S and y - result in P.
Vector lower_envelope(const MixedLatticeContext& ctx, const Vector& x, const Vector& y);

struct Parts {
    Vector upper;           // x v 0 = P_P x
    Vector specific_upper;  // 0 v x = P_S x
    Vector lower;           // (-x) v 0 = P_P(-x)
    Vector specific_lower;  // 0 v (-x) = P_S(-x)
};

// Both decompositions x = specific_upper - lower = upper - specific_lower
// hold exactly as computed (each pair shares one projection call).
Parts parts(const MixedLatticeContext& ctx, const Vector& x);

struct DecompositionResult {
    Vector specific_upper;  // x+ = P_S x
    Vector lower;           // x- = P_P(-x), computed by an independent projection
    double reconstruction_residual = 0.0;
    double orthogonality_residual = 0.0;
    nlohmann::json to_json() const;
};

// Order-form Moreau split with verified invariants; additionally checks
// x+ = 0 iff -x in P.
DecompositionResult moreau_decompose(const MixedLatticeContext& ctx, const Vector& x);

struct LatticeLikeOps {
    Vector join;       // x |_| y  = x v y
    Vector meet;       // x |^| y  = x ^ y
    Vector dual_join;  // x |_|* y = y v x
    Vector dual_meet;  // x |^|* y = y ^ x
};

LatticeLikeOps lattice_like_ops(const MixedLatticeContext& ctx, const Vector& x, const Vector& y);

// Envelope theorem clauses (a)-(j). Monotonicity (d), specific-order
// isotonicity (i) and the two-sided bound closure (j) are recorded, not
// asserted, unless the context is a validated mixed lattice.
PropertyReport check_envelope_identities(const MixedLatticeContext& ctx, int sample_count,
                                         std::uint64_t seed);

// Parts theorem clauses (a)-(g); subadditivity (c)/(d) asserted only on
// validated mixed lattice contexts.
PropertyReport check_part_identities(const MixedLatticeContext& ctx, int sample_count,
                                     std::uint64_t seed);

}  // namespace conelat

#endif
