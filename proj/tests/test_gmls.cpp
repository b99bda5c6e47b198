#include <doctest.h>

#include <random>

#include "conelat/gmls.hpp"
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

GmlsContext pyramid_ctx() {
    return GmlsContext::make(ConeSpec::pyramid(), ConeSpec::pyramid());
}

GmlsContext orthant_ctx(int n) {
    return GmlsContext::make(ConeSpec::orthant(n), ConeSpec::orthant(n));
}

GmlsContext diamond_ctx() {
    return GmlsContext::make(ConeSpec::diamond(), ConeSpec::pyramid());
}

}  // namespace

TEST_CASE("gmls context validation") {
    CHECK_NOTHROW(pyramid_ctx());
    CHECK_NOTHROW(diamond_ctx());
    CHECK_NOTHROW(GmlsContext::make(ConeSpec::lorentz(3), ConeSpec::lorentz(3)));
    // pyramid is not inside the diamond
    CHECK_THROWS_AS(GmlsContext::make(ConeSpec::pyramid(), ConeSpec::diamond()),
                    std::invalid_argument);
    // halfspace cones have no generator form
    Matrix rows(2, 2);
    rows << 1, 0, 0, 1;
    CHECK_THROWS_AS(GmlsContext::make(ConeSpec::halfspaces(rows), ConeSpec::orthant(2)),
                    RepresentationError);
}

TEST_CASE("membership of the paper's upper set") {
    const GmlsContext ctx = pyramid_ctx();
    const Vector x = vec3(2, 2, 0);
    const Vector y = vec3(-2, 2, 0);
    CHECK(in_upper_set(ctx, x, y, vec3(0, 2, 2)));
    CHECK_FALSE(in_upper_set(ctx, x, y, vec3(0, 5, 2)));
    CHECK(in_upper_set(ctx, x, y, vec3(1, 2, 3)));
}

TEST_CASE("certify_extremal on the pyramid example") {
    const GmlsContext ctx = pyramid_ctx();
    const Vector x = vec3(2, 2, 0);
    const Vector y = vec3(-2, 2, 0);

    const ExtremalityCertificate good =
        certify_extremal(ctx, x, y, vec3(0, 0, 2), ExtremalKind::MinimalInUpperSet);
    CHECK(good.certified());
    CHECK(good.probes.size() == 6);

    const ExtremalityCertificate bad =
        certify_extremal(ctx, x, y, vec3(1, 2, 3), ExtremalKind::MinimalInUpperSet);
    REQUIRE_FALSE(bad.certified());
    REQUIRE(bad.witness.has_value());
    // the witness is always independently verifiable
    CHECK(contains(ctx.P(), *bad.witness));
    CHECK(in_upper_set(ctx, x, y, Vector(vec3(1, 2, 3) - *bad.witness)));
    CHECK(bad.witness->norm() > 1e-6);

    CHECK_THROWS_AS(certify_extremal(ctx, x, y, vec3(0, 5, 2), ExtremalKind::MinimalInUpperSet),
                    std::invalid_argument);
}

TEST_CASE("certify_extremal: orthant lattice case certifies the componentwise max") {
    const GmlsContext ctx = orthant_ctx(2);
    const Vector x = vec2(1, 5);
    const Vector y = vec2(3, 2);
    CHECK(certify_extremal(ctx, x, y, vec2(3, 5), ExtremalKind::MinimalInUpperSet).certified());
    CHECK_FALSE(
        certify_extremal(ctx, x, y, vec2(4, 5), ExtremalKind::MinimalInUpperSet).certified());
}

TEST_CASE("sample_min_set reproduces the golden segment families") {
    const GmlsContext ctx = pyramid_ctx();
    {
        const MinSetSample s = sample_min_set(ctx, vec3(2, 2, 0), vec3(-2, 2, 0));
        REQUIRE_FALSE(s.points.empty());
        for (const Vector& w : s.points) {
            CHECK(std::abs(w[0]) <= 1e-7);
            CHECK(std::abs(w[2] - 2.0) <= 1e-7);
            CHECK(w[1] >= -1e-7);
            CHECK(w[1] <= 4.0 + 1e-7);
        }
    }
    {
        const MinSetSample s = sample_min_set(ctx, vec3(0, 4, 2), vec3(0, 2, 2));
        REQUIRE_FALSE(s.points.empty());
        for (const Vector& w : s.points) {
            CHECK(std::abs(w[1] - 3.0) <= 1e-7);
            CHECK(std::abs(w[2] - 3.0) <= 1e-7);
            CHECK(w[0] >= -1.0 - 1e-7);
            CHECK(w[0] <= 1.0 + 1e-7);
        }
    }
    {
        const GmlsContext octx = orthant_ctx(2);
        const MinSetSample s = sample_min_set(octx, vec2(1, 5), vec2(3, 2));
        REQUIRE(s.points.size() == 1);
        CHECK((s.points[0] - vec2(3, 5)).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
}

TEST_CASE("brute_force_min_set: golden grid slice and refusals") {
    const GmlsContext ctx = pyramid_ctx();
    Matrix box(3, 2);
    box << -3, 3, -1, 5, 0, 4;
    const BruteForceResult r =
        brute_force_min_set(ctx, vec3(2, 2, 0), vec3(-2, 2, 0), box, 1.0);
    CHECK(r.exact_arithmetic);
    REQUIRE(r.points.size() == 5);
    for (int t = 0; t <= 4; ++t) {
        CHECK(r.points[static_cast<std::size_t>(t)][0] == 0.0);
        CHECK(r.points[static_cast<std::size_t>(t)][1] == static_cast<double>(t));
        CHECK(r.points[static_cast<std::size_t>(t)][2] == 2.0);
    }

    // orthant sanity
    const GmlsContext octx = orthant_ctx(2);
    Matrix obox(2, 2);
    obox << 0, 6, 0, 6;
    const BruteForceResult q = brute_force_min_set(octx, vec2(1, 5), vec2(3, 2), obox, 1.0);
    REQUIRE(q.points.size() == 1);
    CHECK(q.points[0] == vec2(3, 5));

    // box that misses the set entirely
    Matrix miss(3, 2);
    miss << -3, -2, -1, 0, 0, 1;
    const BruteForceResult m =
        brute_force_min_set(ctx, vec3(2, 2, 0), vec3(-2, 2, 0), miss, 1.0);
    CHECK(m.points.empty());
    CHECK(m.empty_warning);

    // refusal on oversized grids
    Matrix huge(3, 2);
    huge << 0, 1e4, 0, 1e4, 0, 1e4;
    CHECK_THROWS_AS(brute_force_min_set(ctx, vec3(2, 2, 0), vec3(-2, 2, 0), huge, 0.01),
                    std::invalid_argument);
}

TEST_CASE("grid oracle and the lp sampler agree on the lattice case") {
    const GmlsContext octx = orthant_ctx(3);
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        Vector x(3), y(3);
        for (int i = 0; i < 3; ++i) {
            x[i] = static_cast<double>(static_cast<int>(rng() % 7) - 3);
            y[i] = static_cast<double>(static_cast<int>(rng() % 7) - 3);
        }
        const Vector expected = x.cwiseMax(y);
        const MinSetSample s = sample_min_set(octx, x, y);
        REQUIRE(s.points.size() == 1);
        CHECK((s.points[0] - expected).lpNorm<Eigen::Infinity>() <= 1e-9);

        Matrix box(3, 2);
        for (int i = 0; i < 3; ++i) {
            box(i, 0) = -4;
            box(i, 1) = 4;
        }
        const BruteForceResult b = brute_force_min_set(octx, x, y, box, 1.0);
        REQUIRE(b.points.size() == 1);
        CHECK(b.points[0] == expected);
    }
}

TEST_CASE("negation duality of certificates") {
    const GmlsContext ctx = pyramid_ctx();
    std::mt19937_64 rng(71);
    std::normal_distribution<double> N;
    for (int trial = 0; trial < 10; ++trial) {
        const Vector x = vec3(2 * N(rng), 2 * N(rng), 2 * N(rng));
        const Vector y = vec3(2 * N(rng), 2 * N(rng), 2 * N(rng));
        const MinSetSample s = sample_min_set(ctx, x, y);
        REQUIRE_FALSE(s.points.empty());
        for (const Vector& u : s.points) {
            CHECK(certify_extremal(ctx, Vector(-x), Vector(-y), Vector(-u),
                                   ExtremalKind::MaximalInLowerSet)
                      .certified());
        }
    }
}

TEST_CASE("representation theorem probes") {
    const GmlsContext octx = orthant_ctx(2);
    {
        const RepresentationResult r = representation_decompose(octx, vec2(2, -3), vec2(2, 0));
        CHECK(r.valid);
        CHECK((r.w - vec2(0, 3)).norm() == doctest::Approx(0.0));
        for (const auto& probe : r.zero_maximal.probes) CHECK(probe.optimum <= 1e-9);
    }
    {
        // converse with an invalid pair: u = (3,0), w = (1,3) for x = (2,-3)
        const RepresentationResult r = representation_check(octx, vec2(3, 0), vec2(1, 3));
        CHECK_FALSE(r.valid);
        CHECK_FALSE(r.zero_maximal.certified());
        REQUIRE(r.zero_maximal.witness.has_value());
        // the probes find d with u - d >= 0 and w - d >= 0 fails... the stored
        // witness is verifiable: d in P, w - d in S, u - d in P must FAIL for
        // validity, so re-check the refutation facts
        const Vector d = *r.zero_maximal.witness;
        CHECK(contains(octx.P(), d));
        CHECK(contains(octx.S(), Vector(vec2(1, 3) - d)));
        CHECK(contains(octx.P(), Vector(vec2(3, 0) - d)));
        CHECK(d.norm() > 1e-6);
    }
    {
        const GmlsContext ctx = pyramid_ctx();
        const Vector x = vec3(2, 2, 0);
        const MinSetSample s = sample_min_set(ctx, x, Vector(Vector::Zero(3)));
        REQUIRE_FALSE(s.points.empty());
        const RepresentationResult r = representation_decompose(ctx, x, s.points[0]);
        CHECK(r.valid);
    }
}

TEST_CASE("dual membership characterization with probe evidence") {
    const GmlsContext ctx = diamond_ctx();
    {
        const DualMembershipResult r =
            dual_membership(ctx, vec3(0, 0, 1), DualSide::RightDualOfS, 50, 101);
        CHECK(r.member);
        CHECK(r.probes_feasible == r.probes_run);
    }
    {
        const DualMembershipResult r =
            dual_membership(ctx, vec3(0, 0, -1), DualSide::RightDualOfS, 50, 103);
        CHECK_FALSE(r.member);
        CHECK(r.probes_feasible < r.probes_run);
    }
    {
        const DualMembershipResult r =
            dual_membership(ctx, vec3(0.25, 0, 0.5), DualSide::LeftDualOfP, 25, 107);
        CHECK(r.member);
        CHECK(r.probes_feasible == r.probes_run);
    }
    {
        // inside the pyramid but not the diamond: right-dual yes, left-dual no
        const DualMembershipResult r =
            dual_membership(ctx, vec3(1, 1, 1.2), DualSide::LeftDualOfP, 25, 109);
        CHECK_FALSE(r.member);
    }
}

TEST_CASE("projection minimality certificates across dual pairs") {
    std::mt19937_64 rng(73);
    std::normal_distribution<double> N;

    {  // the derived diamond/pyramid instance
        const GmlsContext ctx = diamond_ctx();
        const ExtremalityCertificate cert = certify_projection_minimal(ctx, vec3(-4, 0, 0));
        CHECK(cert.certified());
        CHECK((cert.point - vec3(-2, 0, 2)).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
    {  // x already in S: the retraction case
        const GmlsContext ctx = diamond_ctx();
        const Vector x = vec3(0.5, 0, 1);
        const ExtremalityCertificate cert = certify_projection_minimal(ctx, x);
        CHECK(cert.certified());
        CHECK((cert.point - x).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
    {  // -x in P forces projection zero and min[0 v x] = {0}
        const GmlsContext ctx = diamond_ctx();
        const Vector x = vec3(-1, -1, -1.5);  // -x inside the pyramid
        const ExtremalityCertificate cert = certify_projection_minimal(ctx, x);
        CHECK(cert.certified());
        CHECK(cert.point.norm() <= 1e-9);
        const MinSetSample s = sample_min_set(ctx, Vector(Vector::Zero(3)), x);
        for (const Vector& w : s.points) CHECK(w.norm() <= 1e-7);
    }

    for (int n : {2, 4}) {  // orthant pairs
        const GmlsContext ctx = orthant_ctx(n);
        for (int trial = 0; trial < 25; ++trial) {
            Vector x(n);
            for (int i = 0; i < n; ++i) x[i] = 2 * N(rng);
            CHECK(certify_projection_minimal(ctx, x).certified());
        }
    }
    for (int n : {3, 4}) {  // second-order pairs use the face-interval analysis
        const GmlsContext ctx = GmlsContext::make(ConeSpec::lorentz(n), ConeSpec::lorentz(n));
        for (int trial = 0; trial < 25; ++trial) {
            Vector x(n);
            for (int i = 0; i < n; ++i) x[i] = 2 * N(rng);
            CHECK(certify_projection_minimal(ctx, x).certified());
        }
    }
}

TEST_CASE("orthogonality implies certified zero-maximality") {
    const GmlsContext octx = orthant_ctx(2);
    CHECK(orthogonality_maximality(octx, vec2(2, 0), vec2(0, 3)).certified());

    const GmlsContext lctx = GmlsContext::make(ConeSpec::lorentz(3), ConeSpec::lorentz(3));
    CHECK(orthogonality_maximality(lctx, vec3(2, 0, 2), vec3(-1, 0, 1)).certified());

    // Moreau pairs of random points in the diamond/pyramid context
    const GmlsContext ctx = diamond_ctx();
    std::mt19937_64 rng(79);
    std::normal_distribution<double> N;
    for (int trial = 0; trial < 25; ++trial) {
        const Vector x = vec3(2 * N(rng), 2 * N(rng), 2 * N(rng));
        const Vector xp = project(ctx.S(), x).point;
        const Vector xm = project(ctx.P(), Vector(-x)).point;
        CHECK(orthogonality_maximality(ctx, xp, xm).certified());
    }

    CHECK_THROWS_AS(orthogonality_maximality(octx, vec2(2, 0), vec2(1, 3)),
                    std::invalid_argument);
}

TEST_CASE("detect_mixed_lattice: pyramid segment witness, orthant none") {
    {
        const DetectResult r = detect_mixed_lattice(pyramid_ctx(), 50, 2024);
        REQUIRE(r.verdict == DetectVerdict::NotMixedLattice);
        REQUIRE(r.witness.has_value());
        const auto& w = *r.witness;
        CHECK(w.cert1.certified());
        CHECK(w.cert2.certified());
        CHECK((w.u1 - w.u2).lpNorm<Eigen::Infinity>() > 1e-5);
        // both certified minimal for the same pair: re-verify independently
        const GmlsContext ctx = pyramid_ctx();
        CHECK(certify_extremal(ctx, w.x, w.y, w.u1, ExtremalKind::MinimalInUpperSet).certified());
        CHECK(certify_extremal(ctx, w.x, w.y, w.u2, ExtremalKind::MinimalInUpperSet).certified());
    }
    {
        const DetectResult r = detect_mixed_lattice(orthant_ctx(2), 100, 2024);
        CHECK(r.verdict == DetectVerdict::NoWitnessFound);
        CHECK(r.pairs_examined == 100);
    }
    {  // one-dimensional total order
        const DetectResult r = detect_mixed_lattice(orthant_ctx(1), 50, 7);
        CHECK(r.verdict == DetectVerdict::NoWitnessFound);
    }
}

TEST_CASE("gmls property suite passes its asserted clauses on all three contexts") {
    for (const GmlsContext& ctx : {orthant_ctx(3), pyramid_ctx(), diamond_ctx()}) {
        const PropertyReport report = check_gmls_properties(ctx, 20, 99);
        INFO(report.to_json().dump(2));
        CHECK(report.all_asserted_pass());
        for (const auto& clause : report.clauses) CHECK(clause.failures == 0);
    }
}

TEST_CASE("certificate json schema") {
    const GmlsContext ctx = orthant_ctx(2);
    const ExtremalityCertificate cert =
        certify_extremal(ctx, vec2(1, 5), vec2(3, 2), vec2(3, 5),
                         ExtremalKind::MinimalInUpperSet);
    const nlohmann::json j = cert.to_json();
    CHECK(j["kind"] == "MinimalInUpperSet");
    CHECK(j["verdict"] == "Certified");
    CHECK(j["point"].size() == 2);
    CHECK(j["probes"].size() == 4);
    for (const auto& p : j["probes"]) {
        CHECK(p.contains("direction"));
        CHECK(p.contains("status"));
        CHECK(p.contains("optimum"));
    }
    CHECK_FALSE(j.contains("witness"));
}
