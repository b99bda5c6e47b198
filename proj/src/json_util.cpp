#include "conelat/json_util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace conelat {

double round12(double v) {
    if (!std::isfinite(v)) return v;
    if (v == 0.0) return 0.0;  // normalizes -0.0 as well
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

nlohmann::json vector_to_json(const Vector& v) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(round12(v[i]));
    return j;
}

Vector vector_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("vector: expected a nonempty JSON array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(round12(m(i, k)));
        j.push_back(row);
    }
    return j;
}

}  // namespace conelat
