#pragma once

#include "chaselab/chase.hpp"
#include "chaselab/data_dependent.hpp"
#include "chaselab/firing.hpp"
#include "chaselab/graphs.hpp"
#include "chaselab/hierarchy.hpp"
#include "chaselab/monitor.hpp"

#include <json.hpp>

#include <optional>

namespace chaselab {

struct ClassificationReport {
    int max_k = 3;
    bool has_egds = false;
    bool weakly_acyclic = false;
    bool safe = false;
    bool stratified = false;
    bool c_stratified = false;
    bool inductively_restricted = false;
    std::optional<int> t_level;
    // Absent when sigma holds EGDs.
    std::optional<bool> wgtgd;
    std::optional<bool> rgtgd;
    nlohmann::json witnesses = nlohmann::json::object();

    // Some condition that guarantees termination of at least one chase sequence holds.
    bool any_termination_class() const {
        return weakly_acyclic || safe || stratified || c_stratified || inductively_restricted || t_level.has_value();
    }
};

ClassificationReport classify(const ConstraintSet& sigma, int max_k = 3, FiringCache* cache = nullptr);

nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const ChaseStepRecord& step);
nlohmann::json to_json(const ChaseOutcome& outcome);
nlohmann::json to_json(const MonitorGraph& g);
nlohmann::json to_json(const ConstraintGraph& g);
nlohmann::json to_json(const PositionGraph& g);
nlohmann::json to_json(const RestrictionSystem& rs);
nlohmann::json to_json(const FiringWitness& w);

std::string monitor_to_dot(const MonitorGraph& g);

} // namespace chaselab
