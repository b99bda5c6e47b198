// Asymmetric cone norms built from the upper-part maps, axiom checking and
// isotonicity counterexample search.

#ifndef CONELAT_ASYMNORM_HPP
#define CONELAT_ASYMNORM_HPP

#include <cstdint>

#include "conelat/envelopes.hpp"
#include "conelat/report.hpp"

namespace conelat {

enum class NormKind { SpecificUpper, Upper };

// Which order cone measures subadditivity. The definition carries a single
// order; the two-cone setting offers two candidates, so the choice is
// configurable with the initial order as default.
enum class SubadditivityOrder { InitialP, SpecificS };

std::string to_string(NormKind k);
std::string to_string(SubadditivityOrder o);

// SpecificUpper: Q(x) = P_S x (specific upper part, maps onto S).
// Upper: Q(x) = P_P x (upper part, maps onto P).
Vector eval_norm(const MixedLatticeContext& ctx, NormKind which, const Vector& x);

struct ConeNormReport {
    NormKind which = NormKind::SpecificUpper;
    SubadditivityOrder subadd_order = SubadditivityOrder::InitialP;
    PropertyReport report;  // clauses: axiom1..axiom4, properness
    bool all_asserted_pass() const { return report.all_asserted_pass(); }
    nlohmann::json to_json() const;
};

// Axioms: (1) retraction onto the target cone, (2) positive homogeneity,
// (3) subadditivity in the chosen order (asserted only on validated mixed
// lattice contexts), (4) separation, plus the properness identity
// Q(x - Qx) = 0. Every stored counterexample re-verifies by membership.
ConeNormReport check_axioms(const MixedLatticeContext& ctx, NormKind which, int sample_count,
                            std::uint64_t seed,
                            SubadditivityOrder order = SubadditivityOrder::InitialP);

// Samples comparable pairs in both orders and records whether Qy - Qx stays
// in S and in P; asserted only on validated mixed lattice contexts.
PropertyReport check_isotone(const MixedLatticeContext& ctx, NormKind which, int sample_count,
                             std::uint64_t seed);

}  // namespace conelat

#endif
