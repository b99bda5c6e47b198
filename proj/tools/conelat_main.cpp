// conelat command line front end: parse cone specs, run operations and
// property suites, emit JSON/CSV reports.
//
// Exit codes: 0 success (or report-only run), 1 certified failure or
// counterexample under --strict, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "conelat/asymnorm.hpp"
#include "conelat/cones.hpp"
#include "conelat/envelopes.hpp"
#include "conelat/gmls.hpp"
#include "conelat/json_util.hpp"
#include "conelat/projection.hpp"

namespace {

using namespace conelat;
using nlohmann::json;

struct CommonOpts {
    double tol_feas = 1e-9;
    double tol_opt = 1e-9;
    double tol_zero = 1e-8;
    std::string format = "json";
    std::string out_path;
    bool strict = false;
    std::uint64_t seed = 0;
    bool seed_set = false;

    Tolerances tolerances() const { return Tolerances{tol_feas, tol_opt, tol_zero}; }

    std::uint64_t resolve_seed() const {
        if (seed_set) return seed;
        if (const char* env = std::getenv("CONELAT_SEED")) {
            try {
                return std::stoull(env);
            } catch (...) {
                throw CLI::ValidationError("CONELAT_SEED", "not an unsigned integer");
            }
        }
        return 12345;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol-feas", o.tol_feas, "feasibility slack (default 1e-9)");
    cmd->add_option("--tol-opt", o.tol_opt, "LP optimality slack (default 1e-9)");
    cmd->add_option("--tol-zero", o.tol_zero, "zero threshold (default 1e-8)");
    cmd->add_option("--format", o.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out_path, "write the report to this path instead of stdout");
    cmd->add_flag("--strict", o.strict, "exit 1 on certified failure or counterexample");
    cmd->add_option("--seed", o.seed, "RNG seed (fallback: env CONELAT_SEED, then 12345)")
        ->each([&o](const std::string&) { o.seed_set = true; });
}

Vector parse_vector(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        vals.push_back(v);
    }
    if (vals.empty()) throw std::invalid_argument("vector: expected comma-separated decimals");
    Vector v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
    return v;
}

ConeSpec load_cone(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open cone file: " + path);
    json j;
    in >> j;
    return make_cone(j, tol);
}

void flatten_csv(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_csv(j[i], prefix + "." + std::to_string(i), os);
    } else {
        os << prefix << "," << j.dump() << "\n";
    }
}

void emit(const json& j, const CommonOpts& o) {
    std::ostringstream body;
    if (o.format == "csv") {
        body << "key,value\n";
        flatten_csv(j, "", body);
    } else {
        body << j.dump(2) << "\n";
    }
    if (o.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(o.out_path);
        if (!out) throw std::invalid_argument("cannot open output path: " + o.out_path);
        out << body.str();
    }
}

json minset_to_json(const MinSetSample& s) {
    json j;
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(vector_to_json(p));
    j["points"] = pts;
    json dirs = json::array();
    for (const auto& d : s.directions_used) dirs.push_back(vector_to_json(d));
    j["directions_used"] = dirs;
    j["refine_iterations"] = s.refine_iterations;
    json fails = json::array();
    for (const auto& d : s.failed_directions) fails.push_back(vector_to_json(d));
    j["failed_directions"] = fails;
    return j;
}

// Orthant/orthant pairs are validated vector lattices; everything else runs
// as a projection-realized generalized structure.
MixedLatticeContext make_ml_context(const ConeSpec& S, const std::optional<ConeSpec>& P,
                                    const Tolerances& tol) {
    if (S.kind() == ConeKind::Orthant && (!P || P->kind() == ConeKind::Orthant))
        return MixedLatticeContext::orthant_lattice(S.dim(), tol);
    if (P) return MixedLatticeContext::projection_realized(S, *P, tol);
    return MixedLatticeContext::projection_realized(S, tol);
}

Matrix parse_box(const std::string& text, int dim) {
    Matrix box(dim, 2);
    std::stringstream ss(text);
    std::string range;
    int i = 0;
    while (std::getline(ss, range, ';')) {
        if (i >= dim) throw std::invalid_argument("box: more ranges than dimensions");
        const auto comma = range.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("box: each range must be lo,hi");
        box(i, 0) = std::stod(range.substr(0, comma));
        box(i, 1) = std::stod(range.substr(comma + 1));
        ++i;
    }
    if (i != dim) throw std::invalid_argument("box: expected one lo,hi range per dimension");
    return box;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conelat: cone projections, mixed lattice envelopes and certificates"};
    app.require_subcommand(1);

    int exit_code = 0;
    auto strict_flag = [&](const CommonOpts& o, bool failed) {
        if (o.strict && failed) exit_code = 1;
    };

    // project
    auto o_project = std::make_shared<CommonOpts>();
    std::string project_cone, project_x;
    auto* c_project = app.add_subcommand("project", "metric projection onto a cone");
    c_project->add_option("--cone", project_cone, "cone JSON file")->required();
    c_project->add_option("--x", project_x, "point, comma-separated")->required();
    add_common(c_project, *o_project);
    c_project->callback([&, o_project]() {
        const Tolerances tol = o_project->tolerances();
        const ConeSpec K = load_cone(project_cone, tol);
        const ProjectionResult r = project(K, parse_vector(project_x), tol);
        json j;
        j["point"] = vector_to_json(r.point);
        j["distance"] = round12(r.distance);
        j["characterization_residual"] = round12(r.characterization_residual);
        emit(j, *o_project);
    });

    // envelope upper|lower
    auto o_env = std::make_shared<CommonOpts>();
    std::string env_kind, env_specific, env_initial, env_x, env_y;
    auto* c_env = app.add_subcommand("envelope", "mixed upper/lower envelope");
    c_env->add_option("kind", env_kind, "upper or lower")
        ->required()
        ->check(CLI::IsMember({"upper", "lower"}));
    c_env->add_option("--specific", env_specific, "specific cone JSON file")->required();
    c_env->add_option("--initial", env_initial, "initial cone JSON file (default: dual)");
    c_env->add_option("--x", env_x)->required();
    c_env->add_option("--y", env_y)->required();
    add_common(c_env, *o_env);
    c_env->callback([&, o_env]() {
        const Tolerances tol = o_env->tolerances();
        const ConeSpec S = load_cone(env_specific, tol);
        std::optional<ConeSpec> P;
        if (!env_initial.empty()) P = load_cone(env_initial, tol);
        const MixedLatticeContext ctx = make_ml_context(S, P, tol);
        const Vector x = parse_vector(env_x);
        const Vector y = parse_vector(env_y);
        const Vector r =
            env_kind == "upper" ? upper_envelope(ctx, x, y) : lower_envelope(ctx, x, y);
        json j;
        j["kind"] = env_kind;
        j["result"] = vector_to_json(r);
        emit(j, *o_env);
    });

    // decompose
    auto o_dec = std::make_shared<CommonOpts>();
    std::string dec_specific, dec_initial, dec_x;
    auto* c_dec = app.add_subcommand("decompose", "Moreau decomposition in order form");
    c_dec->add_option("--specific", dec_specific)->required();
    c_dec->add_option("--initial", dec_initial);
    c_dec->add_option("--x", dec_x)->required();
    add_common(c_dec, *o_dec);
    c_dec->callback([&, o_dec]() {
        const Tolerances tol = o_dec->tolerances();
        const ConeSpec S = load_cone(dec_specific, tol);
        std::optional<ConeSpec> P;
        if (!dec_initial.empty()) P = load_cone(dec_initial, tol);
        const MixedLatticeContext ctx = make_ml_context(S, P, tol);
        emit(moreau_decompose(ctx, parse_vector(dec_x)).to_json(), *o_dec);
    });

    // parts
    auto o_parts = std::make_shared<CommonOpts>();
    std::string parts_specific, parts_initial, parts_x;
    auto* c_parts = app.add_subcommand("parts", "upper/lower and specific parts");
    c_parts->add_option("--specific", parts_specific)->required();
    c_parts->add_option("--initial", parts_initial);
    c_parts->add_option("--x", parts_x)->required();
    add_common(c_parts, *o_parts);
    c_parts->callback([&, o_parts]() {
        const Tolerances tol = o_parts->tolerances();
        const ConeSpec S = load_cone(parts_specific, tol);
        std::optional<ConeSpec> P;
        if (!parts_initial.empty()) P = load_cone(parts_initial, tol);
        const MixedLatticeContext ctx = make_ml_context(S, P, tol);
        const Parts p = parts(ctx, parse_vector(parts_x));
        json j;
        j["upper"] = vector_to_json(p.upper);
        j["specific_upper"] = vector_to_json(p.specific_upper);
        j["lower"] = vector_to_json(p.lower);
        j["specific_lower"] = vector_to_json(p.specific_lower);
        emit(j, *o_parts);
    });

    // minset
    auto o_min = std::make_shared<CommonOpts>();
    std::string min_specific, min_initial, min_x, min_y;
    int min_refine = 50;
    auto* c_min = app.add_subcommand("minset", "sample certified minimal elements of [x v y]");
    c_min->add_option("--specific", min_specific)->required();
    c_min->add_option("--initial", min_initial)->required();
    c_min->add_option("--x", min_x)->required();
    c_min->add_option("--y", min_y)->required();
    c_min->add_option("--max-refine", min_refine, "witness-descent cap per direction");
    add_common(c_min, *o_min);
    c_min->callback([&, o_min]() {
        const Tolerances tol = o_min->tolerances();
        const GmlsContext ctx =
            GmlsContext::make(load_cone(min_specific, tol), load_cone(min_initial, tol), tol);
        const MinSetSample s =
            sample_min_set(ctx, parse_vector(min_x), parse_vector(min_y), {}, min_refine);
        emit(minset_to_json(s), *o_min);
        strict_flag(*o_min, !s.failed_directions.empty() && s.points.empty());
    });

    // certify min|max
    auto o_cert = std::make_shared<CommonOpts>();
    std::string cert_kind, cert_specific, cert_initial, cert_x, cert_y, cert_w;
    auto* c_cert = app.add_subcommand("certify", "extremality certificate for a point");
    c_cert->add_option("kind", cert_kind, "min or max")
        ->required()
        ->check(CLI::IsMember({"min", "max"}));
    c_cert->add_option("--specific", cert_specific)->required();
    c_cert->add_option("--initial", cert_initial)->required();
    c_cert->add_option("--x", cert_x)->required();
    c_cert->add_option("--y", cert_y)->required();
    c_cert->add_option("--w", cert_w)->required();
    add_common(c_cert, *o_cert);
    c_cert->callback([&, o_cert]() {
        const Tolerances tol = o_cert->tolerances();
        const GmlsContext ctx =
            GmlsContext::make(load_cone(cert_specific, tol), load_cone(cert_initial, tol), tol);
        const ExtremalKind kind = cert_kind == "min" ? ExtremalKind::MinimalInUpperSet
                                                     : ExtremalKind::MaximalInLowerSet;
        const ExtremalityCertificate cert = certify_extremal(
            ctx, parse_vector(cert_x), parse_vector(cert_y), parse_vector(cert_w), kind);
        emit(cert.to_json(), *o_cert);
        strict_flag(*o_cert, !cert.certified());
    });

    // props envelopes|parts|gmls
    auto o_props = std::make_shared<CommonOpts>();
    std::string props_which, props_specific, props_initial;
    int props_samples = 200;
    auto* c_props = app.add_subcommand("props", "run a theorem clause suite");
    c_props->add_option("which", props_which, "envelopes, parts or gmls")
        ->required()
        ->check(CLI::IsMember({"envelopes", "parts", "gmls"}));
    c_props->add_option("--specific", props_specific)->required();
    c_props->add_option("--initial", props_initial);
    c_props->add_option("--samples", props_samples);
    add_common(c_props, *o_props);
    c_props->callback([&, o_props]() {
        const Tolerances tol = o_props->tolerances();
        const std::uint64_t seed = o_props->resolve_seed();
        const ConeSpec S = load_cone(props_specific, tol);
        std::optional<ConeSpec> P;
        if (!props_initial.empty()) P = load_cone(props_initial, tol);
        PropertyReport report;
        if (props_which == "gmls") {
            const GmlsContext ctx = GmlsContext::make(S, P ? *P : dual_cone(S), tol);
            report = check_gmls_properties(ctx, props_samples, seed);
        } else {
            const MixedLatticeContext ctx = make_ml_context(S, P, tol);
            report = props_which == "envelopes"
                         ? check_envelope_identities(ctx, props_samples, seed)
                         : check_part_identities(ctx, props_samples, seed);
        }
        emit(report.to_json(), *o_props);
        strict_flag(*o_props, !report.all_asserted_pass());
    });

    // detect-ml
    auto o_det = std::make_shared<CommonOpts>();
    std::string det_specific, det_initial;
    int det_samples = 200;
    auto* c_det = app.add_subcommand("detect-ml",
                                     "search for a two-point witness that the structure is not "
                                     "a mixed lattice space");
    c_det->add_option("--specific", det_specific)->required();
    c_det->add_option("--initial", det_initial)->required();
    c_det->add_option("--samples", det_samples);
    add_common(c_det, *o_det);
    c_det->callback([&, o_det]() {
        const Tolerances tol = o_det->tolerances();
        const GmlsContext ctx =
            GmlsContext::make(load_cone(det_specific, tol), load_cone(det_initial, tol), tol);
        emit(detect_mixed_lattice(ctx, det_samples, o_det->resolve_seed()).to_json(), *o_det);
    });

    // norm-check
    auto o_norm = std::make_shared<CommonOpts>();
    std::string norm_specific, norm_initial, norm_which = "specific", norm_order = "initial";
    int norm_samples = 500;
    auto* c_norm = app.add_subcommand("norm-check", "asymmetric cone norm axiom suite");
    c_norm->add_option("--specific", norm_specific)->required();
    c_norm->add_option("--initial", norm_initial);
    c_norm->add_option("--which", norm_which, "specific or upper")
        ->check(CLI::IsMember({"specific", "upper"}));
    c_norm->add_option("--subadd-order", norm_order, "initial or specific")
        ->check(CLI::IsMember({"initial", "specific"}));
    c_norm->add_option("--samples", norm_samples);
    add_common(c_norm, *o_norm);
    c_norm->callback([&, o_norm]() {
        const Tolerances tol = o_norm->tolerances();
        const ConeSpec S = load_cone(norm_specific, tol);
        std::optional<ConeSpec> P;
        if (!norm_initial.empty()) P = load_cone(norm_initial, tol);
        const MixedLatticeContext ctx = make_ml_context(S, P, tol);
        const ConeNormReport r = check_axioms(
            ctx, norm_which == "specific" ? NormKind::SpecificUpper : NormKind::Upper,
            norm_samples, o_norm->resolve_seed(),
            norm_order == "initial" ? SubadditivityOrder::InitialP
                                    : SubadditivityOrder::SpecificS);
        emit(r.to_json(), *o_norm);
        strict_flag(*o_norm, !r.all_asserted_pass());
    });

    // isotone
    auto o_iso = std::make_shared<CommonOpts>();
    std::string iso_specific, iso_initial, iso_which = "specific";
    int iso_samples = 500;
    auto* c_iso = app.add_subcommand("isotone", "isotonicity counterexample search");
    c_iso->add_option("--specific", iso_specific)->required();
    c_iso->add_option("--initial", iso_initial);
    c_iso->add_option("--which", iso_which, "specific or upper")
        ->check(CLI::IsMember({"specific", "upper"}));
    c_iso->add_option("--samples", iso_samples);
    add_common(c_iso, *o_iso);
    c_iso->callback([&, o_iso]() {
        const Tolerances tol = o_iso->tolerances();
        const ConeSpec S = load_cone(iso_specific, tol);
        std::optional<ConeSpec> P;
        if (!iso_initial.empty()) P = load_cone(iso_initial, tol);
        const MixedLatticeContext ctx = make_ml_context(S, P, tol);
        const PropertyReport r = check_isotone(
            ctx, iso_which == "specific" ? NormKind::SpecificUpper : NormKind::Upper,
            iso_samples, o_iso->resolve_seed());
        emit(r.to_json(), *o_iso);
        strict_flag(*o_iso, !r.all_asserted_pass());
    });

    // oracle-minset
    auto o_or = std::make_shared<CommonOpts>();
    std::string or_specific, or_initial, or_x, or_y, or_box;
    double or_step = 1.0;
    auto* c_or = app.add_subcommand("oracle-minset", "brute-force grid oracle for min[x v y]");
    c_or->add_option("--specific", or_specific)->required();
    c_or->add_option("--initial", or_initial)->required();
    c_or->add_option("--x", or_x)->required();
    c_or->add_option("--y", or_y)->required();
    c_or->add_option("--box", or_box, "per-dimension ranges lo,hi;lo,hi;...")->required();
    c_or->add_option("--step", or_step, "grid step (default 1)");
    add_common(c_or, *o_or);
    c_or->callback([&, o_or]() {
        const Tolerances tol = o_or->tolerances();
        const GmlsContext ctx =
            GmlsContext::make(load_cone(or_specific, tol), load_cone(or_initial, tol), tol);
        const BruteForceResult r = brute_force_min_set(
            ctx, parse_vector(or_x), parse_vector(or_y), parse_box(or_box, ctx.dim()), or_step);
        json j;
        json pts = json::array();
        for (const auto& p : r.points) pts.push_back(vector_to_json(p));
        j["points"] = pts;
        j["empty_warning"] = r.empty_warning;
        j["exact_arithmetic"] = r.exact_arithmetic;
        emit(j, *o_or);
        strict_flag(*o_or, r.empty_warning);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // certified failures, verification errors, convergence failures
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
