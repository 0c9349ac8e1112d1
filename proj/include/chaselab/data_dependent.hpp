#pragma once

#include "chaselab/chase.hpp"
#include "chaselab/firing.hpp"
#include "chaselab/model.hpp"

#include <optional>
#include <set>
#include <string>

namespace chaselab {

// Empty-body TGD whose head is the instance, nulls turned into existential variables.
// The label is `label`, primed until it differs from every label in `avoid`.
Constraint alpha_I(const Instance& inst, const ConstraintSet& avoid = {}, std::string label = "alpha_I");

// Constraints unreachable from alpha_I in the chase graph of sigma plus alpha_I.
// The oblivious graph is the default.
std::set<std::string> irrelevant_constraints(const Instance& inst, const ConstraintSet& sigma,
                                             ChaseMode graph_mode = ChaseMode::Oblivious,
                                             FiringCache* cache = nullptr);

enum class Verdict { Terminates, Unknown };
std::string to_string(Verdict v);

struct DataDependentReport {
    Verdict verdict = Verdict::Unknown;
    std::set<std::string> irrelevant;
    std::optional<int> level;  // hierarchy level of the relevant constraints
};

DataDependentReport data_dependent_verdict(const Instance& inst, const ConstraintSet& sigma, int max_k,
                                           ChaseMode graph_mode = ChaseMode::Oblivious,
                                           FiringCache* cache = nullptr);

ChaseOutcome monitored_chase(const Instance& inst, const ConstraintSet& sigma, Policy policy, MonitorConfig config,
                             std::size_t budget = 10000);

} // namespace chaselab
