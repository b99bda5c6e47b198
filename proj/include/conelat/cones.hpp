// Cone representations, membership, duality, pointedness and containment.
//
// Convention used everywhere: rows of a matrix are generators (Generators,
// Pyramid, Diamond, Orthant) or inward normals (Halfspaces, cone = {x : Ax >= 0}).

#ifndef CONELAT_CONES_HPP
#define CONELAT_CONES_HPP

#include <nlohmann/json.hpp>

#include "conelat/types.hpp"

namespace conelat {

enum class ConeKind { Generators, Halfspaces, Orthant, Lorentz, Pyramid, Diamond };

std::string to_string(ConeKind k);

class ConeSpec {
  public:
    ConeSpec() = default;  // placeholder state: orthant(1)

    ConeKind kind() const { return kind_; }
    int dim() const { return dim_; }

    // Raw stored rows: generators, or inward normals for Halfspaces.
    // Empty for Orthant (identity implied) and Lorentz.
    const Matrix& rows() const { return rows_; }

    bool has_generators() const;
    // Rows are generators. Throws RepresentationError for Halfspaces/Lorentz.
    Matrix generator_matrix() const;
    // Rows are inward normals. Throws RepresentationError for Generators/Lorentz.
    Matrix halfspace_matrix() const;

    static ConeSpec orthant(int n);
    static ConeSpec lorentz(int n);
    static ConeSpec pyramid();
    static ConeSpec diamond();
    static ConeSpec generators(Matrix rows, const Tolerances& tol = {});
    static ConeSpec halfspaces(Matrix rows, const Tolerances& tol = {});

    bool same_representation(const ConeSpec& other) const;

  private:
    ConeSpec(ConeKind kind, int dim, Matrix rows)
        : kind_(kind), dim_(dim), rows_(std::move(rows)) {}

    ConeKind kind_ = ConeKind::Orthant;
    int dim_ = 1;
    Matrix rows_;
};

// Parse the documented cone JSON schema:
//   {"type":"generators","rows":[[...],...]} | {"type":"halfspaces","rows":[[...],...]}
//   | {"type":"orthant","dim":n} | {"type":"lorentz","dim":n}
//   | {"type":"pyramid"} | {"type":"diamond"}
ConeSpec make_cone(const nlohmann::json& spec, const Tolerances& tol = {});
nlohmann::json cone_to_json(const ConeSpec& cone);

bool contains(const ConeSpec& K, const Vector& x, const Tolerances& tol = {});

// Euclidean distance from x to K (0 iff contained, up to tolerance).
double distance_to_cone(const ConeSpec& K, const Vector& x, const Tolerances& tol = {});

// Exact membership for integral data; throws std::invalid_argument when the
// inputs are not integral (Lorentz compares squares, still exact).
bool contains_exact(const ConeSpec& K, const Vector& x);

ConeSpec dual_cone(const ConeSpec& K);

// K1 subseteq K2, decided by testing every generator of K1 against K2.
bool contains_cone(const ConeSpec& K1, const ConeSpec& K2, const Tolerances& tol = {});

struct PointednessResult {
    bool pointed = true;
    Vector witness;  // nonzero direction in K cap -K when not pointed
};

PointednessResult is_pointed(const ConeSpec& K, const Tolerances& tol = {});

// Raw-data entry points used by the factories (which reject non-pointed
// cones, so a constructed ConeSpec is always pointed).
PointednessResult pointedness_of_generators(const Matrix& rows, const Tolerances& tol = {});
PointednessResult pointedness_of_halfspaces(const Matrix& rows, const Tolerances& tol = {});

// Ordered pair of cones: `specific` (S) induces the specific order, `initial`
// (P) the initial order. Requires S subseteq P and equal ambient dimension.
struct ConePair {
    ConeSpec specific;
    ConeSpec initial;
};

ConePair make_cone_pair(ConeSpec specific, ConeSpec initial, const Tolerances& tol = {});

}  // namespace conelat

#endif
