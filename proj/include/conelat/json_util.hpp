// JSON helpers shared by reports, certificates and the CLI. Floats are
// rounded to 12 significant digits before serialization so reports are
// byte-stable golden files; nlohmann::json orders keys lexicographically.

#ifndef CONELAT_JSON_UTIL_HPP
#define CONELAT_JSON_UTIL_HPP

#include <nlohmann/json.hpp>

#include "conelat/types.hpp"

namespace conelat {

double round12(double v);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace conelat

#endif
