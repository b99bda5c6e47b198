#include "conelat/report.hpp"

#include "conelat/json_util.hpp"

namespace conelat {

nlohmann::json ClauseRecord::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["description"] = description;
    j["asserted"] = asserted;
    j["samples"] = samples;
    j["failures"] = failures;
    j["skipped"] = skipped;
    j["worst_residual"] = round12(worst_residual);
    if (first_counterexample) j["first_counterexample"] = *first_counterexample;
    if (!note.empty()) j["note"] = note;
    return j;
}

ClauseRecord& PropertyReport::clause(const std::string& id) {
    for (auto& c : clauses)
        if (c.id == id) return c;
    clauses.push_back(ClauseRecord{});
    clauses.back().id = id;
    return clauses.back();
}

const ClauseRecord* PropertyReport::find(const std::string& id) const {
    for (const auto& c : clauses)
        if (c.id == id) return &c;
    return nullptr;
}

bool PropertyReport::all_asserted_pass() const {
    for (const auto& c : clauses)
        if (c.asserted && c.failures > 0) return false;
    return true;
}

bool PropertyReport::any_failures() const {
    for (const auto& c : clauses)
        if (c.failures > 0) return true;
    return false;
}

nlohmann::json PropertyReport::to_json() const {
    nlohmann::json j;
    j["title"] = title;
    nlohmann::json cl = nlohmann::json::array();
    for (const auto& c : clauses) cl.push_back(c.to_json());
    j["clauses"] = cl;
    j["all_asserted_pass"] = all_asserted_pass();
    return j;
}

}  // namespace conelat
