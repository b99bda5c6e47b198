#include "conelat/asymnorm.hpp"

#include <cmath>

#include "conelat/json_util.hpp"
#include "conelat/projection.hpp"
#include "conelat/sampling.hpp"

namespace conelat {

std::string to_string(NormKind k) {
    return k == NormKind::SpecificUpper ? "SpecificUpper" : "Upper";
}

std::string to_string(SubadditivityOrder o) {
    return o == SubadditivityOrder::InitialP ? "InitialP" : "SpecificS";
}

Vector eval_norm(const MixedLatticeContext& ctx, NormKind which, const Vector& x) {
    require_dim(x, ctx.dim(), "eval_norm: x");
    const ConeSpec& target = which == NormKind::SpecificUpper ? ctx.S() : ctx.P();
    const Vector q = project(target, x, ctx.tol).point;
    if (!contains(target, q, ctx.tol))
        throw VerificationError("eval_norm: value escapes the target cone",
                                distance_to_cone(target, q, ctx.tol));
    return q;
}

nlohmann::json ConeNormReport::to_json() const {
    nlohmann::json j = report.to_json();
    j["which"] = to_string(which);
    j["subadditivity_order"] = to_string(subadd_order);
    return j;
}

ConeNormReport check_axioms(const MixedLatticeContext& ctx, NormKind which, int sample_count,
                            std::uint64_t seed, SubadditivityOrder order) {
    Sampler sampler(seed);
    const int n = ctx.dim();
    const bool lattice = ctx.genuine_lattice();
    const double eq_tol = 100.0 * ctx.tol.feas;
    const ConeSpec& target = which == NormKind::SpecificUpper ? ctx.S() : ctx.P();
    const ConeSpec& order_cone = order == SubadditivityOrder::InitialP ? ctx.P() : ctx.S();

    ConeNormReport result;
    result.which = which;
    result.subadd_order = order;
    PropertyReport& report = result.report;
    report.title = "asymmetric cone norm axioms (" + to_string(which) + ")";
    auto& ax1 = report.clause("axiom1_retraction");
    ax1.description = "Q x = x on the target cone and Q maps into it";
    auto& ax2 = report.clause("axiom2_homogeneity");
    ax2.description = "Q(t x) = t Q x for t >= 0";
    auto& ax3 = report.clause("axiom3_subadditivity");
    ax3.description = "Q x + Q y - Q(x+y) lies in the " + to_string(order) + " order cone";
    ax3.asserted = lattice;
    auto& ax4 = report.clause("axiom4_separation");
    ax4.description = "Q x = 0 and Q(-x) = 0 force x = 0";
    auto& prop = report.clause("properness");
    prop.description = "Q(x - Q x) = 0";

    for (int k = 0; k < sample_count; ++k) {
        const Vector x = sampler.mixed_ambient(ctx.S(), k);
        const double scale = 1.0 + x.norm();
        const nlohmann::json cx = {{"x", vector_to_json(x)}};
        const Vector qx = eval_norm(ctx, which, x);

        {  // (1) retraction
            const Vector c = sampler.in_cone(target);
            const double r = (eval_norm(ctx, which, c) - c).lpNorm<Eigen::Infinity>() /
                             (1.0 + c.norm());
            const bool into = contains(target, qx, ctx.tol);
            ax1.check(r <= eq_tol && into, r, cx);
        }
        {  // (2) positive homogeneity, with t = 0 exercised periodically
            const double t = (k % 6 == 0) ? 0.0 : std::abs(sampler.normal()) * 2.0;
            const double r =
                (eval_norm(ctx, which, Vector(t * x)) - t * qx).lpNorm<Eigen::Infinity>() /
                (1.0 + t * x.norm());
            ax2.check(r <= eq_tol, r, cx);
        }
        {  // (3) subadditivity in the configured order
            const Vector y = sampler.mixed_ambient(ctx.P(), k + 1);
            const Vector gap = qx + eval_norm(ctx, which, y) - eval_norm(ctx, which, Vector(x + y));
            const bool ok = contains(order_cone, gap, ctx.tol);
            ax3.check(ok, 0.0,
                      {{"x", vector_to_json(x)},
                       {"y", vector_to_json(y)},
                       {"gap", vector_to_json(gap)}});
        }
        {  // (4) separation via the Moreau split
            const Vector qmx = eval_norm(ctx, which, Vector(-x));
            const bool both_zero =
                qx.norm() <= ctx.tol.zero * scale && qmx.norm() <= ctx.tol.zero * scale;
            bool ok = !both_zero || x.norm() <= 100.0 * ctx.tol.zero * scale;
            // constructed check: Q(0) = 0
            ok = ok && eval_norm(ctx, which, Vector(Vector::Zero(n))).norm() <= eq_tol;
            ax4.check(ok, 0.0, cx);
        }
        {  // properness
            const double r =
                eval_norm(ctx, which, Vector(x - qx)).norm() / scale;
            prop.check(r <= eq_tol, r, cx);
        }
    }
    return result;
}

PropertyReport check_isotone(const MixedLatticeContext& ctx, NormKind which, int sample_count,
                             std::uint64_t seed) {
    Sampler sampler(seed);
    const bool lattice = ctx.genuine_lattice();

    PropertyReport report;
    report.title = "isotonicity of the " + to_string(which) + " map";
    auto& spec_pairs = report.clause("specific_order_pairs");
    spec_pairs.description = "x =< y implies Q y - Q x in S and in P";
    spec_pairs.asserted = lattice;
    auto& init_pairs = report.clause("initial_order_pairs");
    init_pairs.description = "x <= y implies Q y - Q x in S and in P";
    init_pairs.asserted = lattice;

    for (int k = 0; k < sample_count; ++k) {
        const Vector x = sampler.mixed_ambient(ctx.S(), k);
        {
            const Vector y = x + sampler.in_cone(ctx.S());
            const Vector gap = eval_norm(ctx, which, y) - eval_norm(ctx, which, x);
            const bool ok = contains(ctx.S(), gap, ctx.tol) && contains(ctx.P(), gap, ctx.tol);
            spec_pairs.check(ok, 0.0,
                             {{"x", vector_to_json(x)},
                              {"y", vector_to_json(y)},
                              {"gap", vector_to_json(gap)}});
        }
        {
            const Vector y = x + sampler.in_cone(ctx.P());
            const Vector gap = eval_norm(ctx, which, y) - eval_norm(ctx, which, x);
            const bool ok = contains(ctx.S(), gap, ctx.tol) && contains(ctx.P(), gap, ctx.tol);
            init_pairs.check(ok, 0.0,
                             {{"x", vector_to_json(x)},
                              {"y", vector_to_json(y)},
                              {"gap", vector_to_json(gap)}});
        }
    }
    return report;
}

}  // namespace conelat
