// Set-valued layer of the generalized mixed lattice structure: envelope sets
// [x v y] and [x ^ y], LP-certified minimal/maximal elements, min-set
// sampling with witness-descent refinement, a brute-force grid oracle, and
// checkers for the structure theorems.
//
// The minimality decision procedure: w is minimal in [x v y] iff the
// displacement polyhedron
//     F = { d : d = G_P^T mu,  w-d-x = G_S^T lambda,  w-d-y = G_P^T nu,
//           lambda, mu, nu >= 0 }
// equals {0}. F is convex and contains 0, so 2n box-bounded LPs maximizing
// +-d_i decide it: all optima zero iff F = {0}; any positive optimum yields
// a verifiable witness displacement. Maximality reduces to minimality by
// negation. Second-order (Lorentz) pairs use an exact face-interval
// reduction instead of LPs.

#ifndef CONELAT_GMLS_HPP
#define CONELAT_GMLS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "conelat/cones.hpp"
#include "conelat/numerics.hpp"
#include "conelat/report.hpp"
#include "conelat/types.hpp"

namespace conelat {

struct GmlsContext {
    ConePair pair;
    Tolerances tol;
    double probe_box = 1e6;

    // cached data: generator rows (empty in the second-order case) and an
    // interior direction of P* used as a guaranteed-certifying LP objective
    Matrix gen_specific;
    Matrix gen_initial;
    bool second_order = false;
    Vector interior_dual_direction;

    const ConeSpec& S() const { return pair.specific; }
    const ConeSpec& P() const { return pair.initial; }
    int dim() const { return pair.specific.dim(); }

    static GmlsContext make(ConeSpec specific, ConeSpec initial, Tolerances tol = {},
                            double probe_box = 1e6);
};

enum class ExtremalKind { MinimalInUpperSet, MaximalInLowerSet };
enum class Verdict { Certified, Refuted };

std::string to_string(ExtremalKind k);
std::string to_string(Verdict v);

struct ProbeRecord {
    Vector direction;  // objective direction in displacement space
    LpStatus status = LpStatus::Optimal;
    double optimum = 0.0;
};

struct ExtremalityCertificate {
    Vector point;
    ExtremalKind kind = ExtremalKind::MinimalInUpperSet;
    Verdict verdict = Verdict::Certified;
    std::vector<ProbeRecord> probes;
    std::optional<Vector> witness;  // present iff Refuted; nonzero displacement in P

    bool certified() const { return verdict == Verdict::Certified; }
    nlohmann::json to_json() const;
};

// w in [x v y] = {w : w - x in S, w - y in P}; dually for the lower set.
bool in_upper_set(const GmlsContext& ctx, const Vector& x, const Vector& y, const Vector& w);
bool in_lower_set(const GmlsContext& ctx, const Vector& x, const Vector& y, const Vector& w);

// Decides minimality of w in [x v y] (or maximality in [x ^ y]).
// Precondition: w lies in the respective set.
ExtremalityCertificate certify_extremal(const GmlsContext& ctx, const Vector& x, const Vector& y,
                                        const Vector& w, ExtremalKind kind);

struct MinSetSample {
    std::vector<Vector> points;  // every entry carries a Certified certificate
    std::vector<Vector> directions_used;
    std::vector<int> refine_iterations;      // aligned with points
    std::vector<Vector> failed_directions;   // refinement hit the cap
};

// For each direction c: minimize <c, w> over [x v y] by LP, then descend
// along refutation witnesses until certified minimal. Directions outside S*
// are replaced by their metric projection onto S* so every probe LP is
// bounded. Empty `directions` selects the default set: an interior direction
// of P*, the coordinate directions +-e_i and the generators of P.
MinSetSample sample_min_set(const GmlsContext& ctx, const Vector& x, const Vector& y,
                            const std::vector<Vector>& directions = {}, int max_refine = 50);

// max[x ^ y] via the negation identity min[x v y] = -max[(-x) ^ (-y)].
MinSetSample sample_max_set(const GmlsContext& ctx, const Vector& x, const Vector& y,
                            const std::vector<Vector>& directions = {}, int max_refine = 50);

struct BruteForceResult {
    std::vector<Vector> points;
    bool empty_warning = false;   // no grid point survived; box may miss the set
    bool exact_arithmetic = false;  // integral data path was used
};

// Grid oracle: enumerate box grid points, keep members of [x v y], remove
// P-dominated ones. box is n x 2 (lo, hi per coordinate). Refuses grids
// larger than 1e7 points. Uses exact integer arithmetic whenever inputs,
// generators, box and step are integral.
BruteForceResult brute_force_min_set(const GmlsContext& ctx, const Vector& x, const Vector& y,
                                     const Matrix& box, double step);

PropertyReport check_gmls_properties(const GmlsContext& ctx, int sample_count,
                                     std::uint64_t seed);

enum class DetectVerdict { NotMixedLattice, NoWitnessFound };

std::string to_string(DetectVerdict v);

struct MixedLatticeWitness {
    Vector x, y, u1, u2;
    ExtremalityCertificate cert1, cert2;
};

struct DetectResult {
    DetectVerdict verdict = DetectVerdict::NoWitnessFound;
    std::optional<MixedLatticeWitness> witness;
    long pairs_examined = 0;
    nlohmann::json to_json() const;
};

// Searches sampled pairs for two distinct certified minimal elements of one
// upper set. NoWitnessFound is inconclusive by construction, not a proof.
DetectResult detect_mixed_lattice(const GmlsContext& ctx, int sample_count, std::uint64_t seed);

struct RepresentationResult {
    Vector w;
    ExtremalityCertificate u_minimal;    // u in min[x v 0]
    ExtremalityCertificate w_minimal;    // w in min[0 v (-x)]
    ExtremalityCertificate zero_maximal; // P cap [w ^ u] = {0}
    bool valid = false;
    nlohmann::json to_json() const;
};

// Splits x = u - w for a minimal upper element u and certifies the
// representation-theorem conditions on the pair.
RepresentationResult representation_decompose(const GmlsContext& ctx, const Vector& x,
                                              const Vector& u);

// Converse direction: given a candidate pair (u, w), set x = u - w and run
// the same probes; refuted probes identify invalid representation pairs.
RepresentationResult representation_check(const GmlsContext& ctx, const Vector& u,
                                          const Vector& w);

enum class DualSide { RightDualOfS, LeftDualOfP };

struct DualMembershipResult {
    bool member = false;
    int probes_run = 0;
    int probes_feasible = 0;
};

// Characterization (right dual of S = P, left dual of P = S) plus
// definitional LP spot-checks; a feasibility failure against a positive
// characterization raises InvariantViolation.
DualMembershipResult dual_membership(const GmlsContext& ctx, const Vector& y, DualSide side,
                                     int probe_count, std::uint64_t seed);

// Thm-4.1 certificate: the metric projection P_S(x) is a minimal element of
// [0 v x]. Requires P membership-equivalent to dual(S); a refutation is an
// invariant violation and throws.
ExtremalityCertificate certify_projection_minimal(const GmlsContext& ctx, const Vector& x);

// For x in S, y in P with <x, y> = 0, certifies 0 in max[x ^ y].
ExtremalityCertificate orthogonality_maximality(const GmlsContext& ctx, const Vector& x,
                                                const Vector& y);

}  // namespace conelat

#endif
