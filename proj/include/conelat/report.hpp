// Per-clause pass/fail/counterexample records for theorem checkers.

#ifndef CONELAT_REPORT_HPP
#define CONELAT_REPORT_HPP

#include <nlohmann/json.hpp>
#include <deque>
#include <optional>
#include <string>

namespace conelat {

struct ClauseRecord {
    std::string id;
    std::string description;
    // asserted clauses must end with zero failures; recorded clauses are
    // instruments whose counterexamples are reported, not judged
    bool asserted = true;
    long samples = 0;
    long failures = 0;
    long skipped = 0;  // samples too close to a tolerance threshold to decide
    double worst_residual = 0.0;
    std::optional<nlohmann::json> first_counterexample;
    std::string note;

    void pass(double residual) {
        ++samples;
        if (residual > worst_residual) worst_residual = residual;
    }
    void fail(double residual, nlohmann::json counterexample) {
        ++samples;
        ++failures;
        if (residual > worst_residual) worst_residual = residual;
        if (!first_counterexample) first_counterexample = std::move(counterexample);
    }
    void check(bool ok, double residual, const nlohmann::json& counterexample) {
        if (ok)
            pass(residual);
        else
            fail(residual, counterexample);
    }

    nlohmann::json to_json() const;
};

struct PropertyReport {
    std::string title;
    // deque: clause() hands out references that must survive later insertions
    std::deque<ClauseRecord> clauses;

    ClauseRecord& clause(const std::string& id);
    const ClauseRecord* find(const std::string& id) const;
    bool all_asserted_pass() const;
    // true when some clause, asserted or not, recorded a failure
    bool any_failures() const;
    nlohmann::json to_json() const;
};

}  // namespace conelat

#endif
