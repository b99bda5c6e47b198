#include <doctest.h>

#include <random>

#include "conelat/envelopes.hpp"
#include "conelat/projection.hpp"

using namespace conelat;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

std::vector<MixedLatticeContext> realized_contexts() {
    return {MixedLatticeContext::orthant_lattice(2),
            MixedLatticeContext::projection_realized(ConeSpec::lorentz(3)),
            MixedLatticeContext::projection_realized(ConeSpec::diamond())};
}

}  // namespace

TEST_CASE("context construction enforces the dual pairing") {
    CHECK_NOTHROW(MixedLatticeContext::projection_realized(ConeSpec::diamond()));
    CHECK_NOTHROW(MixedLatticeContext::projection_realized(ConeSpec::diamond(),
                                                           ConeSpec::pyramid()));
    CHECK_THROWS_AS(MixedLatticeContext::projection_realized(ConeSpec::pyramid()),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        MixedLatticeContext::projection_realized(ConeSpec::diamond(), ConeSpec::diamond()),
        std::invalid_argument);
    CHECK(MixedLatticeContext::orthant_lattice(3).genuine_lattice());
    CHECK_FALSE(
        MixedLatticeContext::projection_realized(ConeSpec::lorentz(3)).genuine_lattice());
}

TEST_CASE("upper envelope: lattice case, diagonal and the diamond instance") {
    const MixedLatticeContext orth = MixedLatticeContext::orthant_lattice(2);
    CHECK((upper_envelope(orth, vec2(1, 5), vec2(3, 2)) - vec2(3, 5)).norm() ==
          doctest::Approx(0.0));
    CHECK((lower_envelope(orth, vec2(1, 5), vec2(3, 2)) - vec2(1, 2)).norm() ==
          doctest::Approx(0.0));

    std::mt19937_64 rng(83);
    std::normal_distribution<double> N;
    for (const auto& ctx : realized_contexts()) {
        const Vector x = [&] {
            Vector v(ctx.dim());
            for (int i = 0; i < ctx.dim(); ++i) v[i] = N(rng);
            return v;
        }();
        CHECK((upper_envelope(ctx, x, x) - x).lpNorm<Eigen::Infinity>() <=
              1e-9 * (1.0 + x.norm()));
        CHECK((lower_envelope(ctx, x, x) - x).lpNorm<Eigen::Infinity>() <=
              1e-9 * (1.0 + x.norm()));
    }

    const MixedLatticeContext dia = MixedLatticeContext::projection_realized(ConeSpec::diamond());
    CHECK((upper_envelope(dia, vec3(2, 2, 0), vec3(-2, 2, 0)) - vec3(0, 2, 2))
              .lpNorm<Eigen::Infinity>() <= 1e-9);
    CHECK((lower_envelope(dia, vec3(-2, 2, 0), vec3(2, 2, 0)) - vec3(0, 2, -2))
              .lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("envelope results satisfy the defining memberships") {
    std::mt19937_64 rng(89);
    std::normal_distribution<double> N;
    for (const auto& ctx : realized_contexts()) {
        for (int trial = 0; trial < 30; ++trial) {
            Vector x(ctx.dim()), y(ctx.dim());
            for (int i = 0; i < ctx.dim(); ++i) {
                x[i] = 2 * N(rng);
                y[i] = 2 * N(rng);
            }
            const Vector up = upper_envelope(ctx, x, y);
            CHECK(contains(ctx.S(), Vector(up - x)));
            CHECK(contains(ctx.P(), Vector(up - y)));
            const Vector lo = lower_envelope(ctx, x, y);
            CHECK(contains(ctx.S(), Vector(x - lo)));
            CHECK(contains(ctx.P(), Vector(y - lo)));
            // the additive identity ties the two envelopes together
            CHECK((up + lower_envelope(ctx, y, x) - x - y).lpNorm<Eigen::Infinity>() <=
                  1e-9 * (1.0 + x.norm() + y.norm()));
        }
    }
}

TEST_CASE("parts: lattice positive/negative decomposition and closed forms") {
    const MixedLatticeContext orth = MixedLatticeContext::orthant_lattice(2);
    const Parts p = parts(orth, vec2(2, -3));
    CHECK((p.upper - vec2(2, 0)).norm() == doctest::Approx(0.0));
    CHECK((p.specific_upper - vec2(2, 0)).norm() == doctest::Approx(0.0));
    CHECK((p.lower - vec2(0, 3)).norm() == doctest::Approx(0.0));
    CHECK((p.specific_lower - vec2(0, 3)).norm() == doctest::Approx(0.0));

    const MixedLatticeContext lor = MixedLatticeContext::projection_realized(ConeSpec::lorentz(3));
    const Parts q = parts(lor, vec3(3, 0, 1));
    CHECK((q.specific_upper - vec3(2, 0, 2)).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK((q.lower - vec3(-1, 0, 1)).lpNorm<Eigen::Infinity>() <= 1e-12);

    // x in S: upper parts retract, lower parts vanish
    const MixedLatticeContext dia = MixedLatticeContext::projection_realized(ConeSpec::diamond());
    const Vector s = vec3(0.5, 0.25, 1.0);
    REQUIRE(contains(dia.S(), s));
    const Parts r = parts(dia, s);
    CHECK((r.specific_upper - s).lpNorm<Eigen::Infinity>() <= 1e-9);
    CHECK(r.lower.norm() <= 1e-9);
}

TEST_CASE("moreau_decompose: residuals, memberships and the vanishing criterion") {
    std::mt19937_64 rng(97);
    std::normal_distribution<double> N;
    for (const auto& ctx : realized_contexts()) {
        for (int trial = 0; trial < 50; ++trial) {
            Vector x(ctx.dim());
            for (int i = 0; i < ctx.dim(); ++i) x[i] = 2 * N(rng);
            const DecompositionResult d = moreau_decompose(ctx, x);
            CHECK(d.reconstruction_residual <= 1e-9 * (1.0 + x.norm()));
            CHECK(d.orthogonality_residual <= 1e-8 * (1.0 + x.squaredNorm()));
            CHECK(contains(ctx.S(), d.specific_upper));
            CHECK(contains(ctx.P(), d.lower));
        }
        // x = -g for a generator g of P: decomposition is (0, g)
        if (ctx.P().has_generators()) {
            const Matrix G = ctx.P().generator_matrix();
            for (Eigen::Index i = 0; i < G.rows(); ++i) {
                const Vector g = G.row(i).transpose();
                const DecompositionResult d = moreau_decompose(ctx, Vector(-g));
                CHECK(d.specific_upper.norm() <= 1e-9 * (1.0 + g.norm()));
                CHECK((d.lower - g).lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + g.norm()));
            }
        }
    }

    const MixedLatticeContext orth = MixedLatticeContext::orthant_lattice(2);
    const DecompositionResult d = moreau_decompose(orth, vec2(2, -3));
    CHECK((d.specific_upper - vec2(2, 0)).norm() == doctest::Approx(0.0));
    CHECK((d.lower - vec2(0, 3)).norm() == doctest::Approx(0.0));

    const MixedLatticeContext lor = MixedLatticeContext::projection_realized(ConeSpec::lorentz(3));
    const DecompositionResult e = moreau_decompose(lor, vec3(3, 0, 1));
    CHECK((e.specific_upper - vec3(2, 0, 2)).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK((e.lower - vec3(-1, 0, 1)).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK(e.specific_upper.dot(e.lower) == doctest::Approx(0.0));
}

TEST_CASE("lattice_like_ops are definitional aliases of the envelopes") {
    std::mt19937_64 rng(101);
    std::normal_distribution<double> N;
    for (const auto& ctx : realized_contexts()) {
        Vector x(ctx.dim()), y(ctx.dim());
        for (int i = 0; i < ctx.dim(); ++i) {
            x[i] = N(rng);
            y[i] = N(rng);
        }
        const LatticeLikeOps ops = lattice_like_ops(ctx, x, y);
        CHECK((ops.join - upper_envelope(ctx, x, y)).norm() == 0.0);
        CHECK((ops.dual_join - upper_envelope(ctx, y, x)).norm() == 0.0);
        CHECK((ops.meet - lower_envelope(ctx, x, y)).norm() == 0.0);
        CHECK((ops.dual_meet - lower_envelope(ctx, y, x)).norm() == 0.0);
    }
    const MixedLatticeContext dia = MixedLatticeContext::projection_realized(ConeSpec::diamond());
    const LatticeLikeOps ops = lattice_like_ops(dia, vec3(2, 2, 0), vec3(-2, 2, 0));
    CHECK((ops.join - vec3(0, 2, 2)).lpNorm<Eigen::Infinity>() <= 1e-9);
    CHECK((ops.dual_meet - vec3(0, 2, -2)).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("envelope clause suite: lattice context asserts everything") {
    const MixedLatticeContext orth = MixedLatticeContext::orthant_lattice(3);
    const PropertyReport r = check_envelope_identities(orth, 100, 7);
    INFO(r.to_json().dump(2));
    for (const auto& clause : r.clauses) CHECK(clause.failures == 0);
}

TEST_CASE("envelope clause suite: generalized contexts assert the unconditional clauses") {
    for (const auto& ctx :
         {MixedLatticeContext::projection_realized(ConeSpec::diamond()),
          MixedLatticeContext::projection_realized(ConeSpec::lorentz(3))}) {
        const PropertyReport r = check_envelope_identities(ctx, 60, 11);
        INFO(r.to_json().dump(2));
        CHECK(r.all_asserted_pass());
        for (const char* id : {"a", "b", "c", "e", "f", "g", "h"}) {
            const ClauseRecord* c = r.find(id);
            REQUIRE(c != nullptr);
            CHECK(c->failures == 0);
        }
        // the restricted clauses are recorded, never asserted, here
        CHECK_FALSE(r.find("d")->asserted);
        CHECK_FALSE(r.find("i")->asserted);
        CHECK_FALSE(r.find("j")->asserted);
    }
}

TEST_CASE("parts clause suite") {
    const MixedLatticeContext orth = MixedLatticeContext::orthant_lattice(3);
    const PropertyReport r = check_part_identities(orth, 100, 13);
    INFO(r.to_json().dump(2));
    for (const auto& clause : r.clauses) CHECK(clause.failures == 0);

    for (const auto& ctx :
         {MixedLatticeContext::projection_realized(ConeSpec::diamond()),
          MixedLatticeContext::projection_realized(ConeSpec::lorentz(3))}) {
        const PropertyReport g = check_part_identities(ctx, 60, 17);
        INFO(g.to_json().dump(2));
        CHECK(g.all_asserted_pass());
        for (const char* id : {"a", "b", "e", "f", "g"}) {
            const ClauseRecord* c = g.find(id);
            REQUIRE(c != nullptr);
            CHECK(c->failures == 0);
        }
        CHECK_FALSE(g.find("c")->asserted);
        CHECK_FALSE(g.find("d")->asserted);
    }
}
