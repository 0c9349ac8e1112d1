#pragma once

#include "chaselab/graphs.hpp"
#include "chaselab/model.hpp"
#include "chaselab/step.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace chaselab {

// Concrete evidence for a firing relation: the start instance, the grounding of every
// chain member (images of its universals in name order), and the instance reached
// after all members but the last were applied.
struct FiringWitness {
    Instance start;
    std::vector<std::vector<Term>> args;
    Instance reached;
};

// alpha can cause beta to fire: standard or oblivious step for alpha.
std::optional<FiringWitness> find_firing_witness(const Constraint& alpha, const Constraint& beta, ChaseMode mode);
bool fires_before(const Constraint& alpha, const Constraint& beta, ChaseMode mode);

// Chain relation over k >= 2 constraints with the null restricted to `allowed`.
std::optional<FiringWitness> find_chain_witness(const std::vector<Constraint>& chain, const PositionSet& allowed);
bool fires_before_kp(const std::vector<Constraint>& chain, const PositionSet& allowed);

// Memo shared by the graph and hierarchy computations. Thread-safe.
class FiringCache {
public:
    bool fires_before(const Constraint& alpha, const Constraint& beta, ChaseMode mode);
    bool fires_before_kp(const std::vector<Constraint>& chain, const PositionSet& allowed);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, bool> memo_;
};

ConstraintGraph chase_graph(const ConstraintSet& sigma, ChaseMode mode, FiringCache* cache = nullptr);

} // namespace chaselab
