#pragma once

#include "chaselab/homomorphism.hpp"
#include "chaselab/model.hpp"
#include "chaselab/monitor.hpp"
#include "chaselab/step.hpp"

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace chaselab {

enum class Policy { RoundRobin, FifoViolations, SccOrder };
enum class ChaseStatus { Terminated, Failed, BudgetExhausted, AbortedByMonitor };

std::string to_string(Policy p);
std::string to_string(ChaseStatus s);
std::optional<Policy> policy_from_string(std::string_view s);

// Hands out null names that were never used before in the run.
class NullSupply {
public:
    explicit NullSupply(std::string prefix = "n") : prefix_(std::move(prefix)) {}

    void avoid(const Instance& inst);
    Term next();

private:
    std::string prefix_;
    std::size_t counter_ = 0;
    std::unordered_set<std::uint32_t> taken_;
};

class ChasePreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct TgdStepResult {
    Instance instance;
    std::vector<FreshNull> fresh_nulls;
};

// `h` must map the body into `inst`; in standard mode the grounding must be violated.
TgdStepResult apply_tgd_step(const Instance& inst, const Constraint& c, const Homomorphism& h, ChaseMode mode,
                             NullSupply& nulls);

struct EgdStepResult {
    std::optional<Instance> instance;  // empty when both sides are distinct constants
    std::optional<std::pair<Term, Term>> substitution;
};

// Null versus constant keeps the constant; between two nulls the larger name goes.
EgdStepResult apply_egd_step(const Instance& inst, const Constraint& c, const Homomorphism& h);

struct ChaseOptions {
    Policy policy = Policy::RoundRobin;
    std::size_t budget = 10000;
    ChaseMode mode = ChaseMode::Standard;
    std::optional<MonitorConfig> monitor;
    // Ordered constraint classes for scc-order; computed from the chase graph when empty.
    std::vector<std::vector<std::string>> stages;
};

struct ChaseOutcome {
    ChaseStatus status = ChaseStatus::Terminated;
    // Final instance; absent when the run failed.
    std::optional<Instance> result;
    std::vector<ChaseStepRecord> log;
    std::optional<MonitorGraph> monitor;
};

ChaseOutcome chase(const Instance& start, const ConstraintSet& sigma, const ChaseOptions& options = {});

// Some body atom of the grounded constraint holds every null of the grounding that is
// not in dom(start) and occurs in the grounded head.
bool guarded_null_property_check(const Instance& start, const ChaseStepRecord& step, const Instance& before,
                                 const Constraint& c);

} // namespace chaselab
