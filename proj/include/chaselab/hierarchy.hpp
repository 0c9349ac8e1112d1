#pragma once

#include "chaselab/firing.hpp"
#include "chaselab/graphs.hpp"
#include "chaselab/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chaselab {

// Head positions of a TGD that may receive a null when the body nulls sit in `allowed`.
// Empty for EGDs.
PositionSet aff_cl(const Constraint& alpha, const PositionSet& allowed);

struct RestrictionSystem {
    int k = 2;
    ConstraintGraph graph;
    PositionSet f;
};

RestrictionSystem minimal_restriction_system(const ConstraintSet& sigma, int k, FiringCache* cache = nullptr);

// Subsets produced by the recursive decomposition of restriction systems.
std::vector<ConstraintSet> part(const ConstraintSet& sigma, int k, FiringCache* cache = nullptr);
bool inductively_restricted(const ConstraintSet& sigma, FiringCache* cache = nullptr);

// Membership in level k of the hierarchy (k >= 2), via the safety-shortcut recursion.
bool t_member(const ConstraintSet& sigma, int k, FiringCache* cache = nullptr);
// Smallest k in [2, max_k] with t_member, if any.
std::optional<int> t_level(const ConstraintSet& sigma, int max_k, FiringCache* cache = nullptr);

// A cyclic component of the (c-)chase graph that is not weakly acyclic, if any.
std::optional<std::vector<std::string>> stratification_violation(const ConstraintSet& sigma, ChaseMode mode,
                                                                 FiringCache* cache = nullptr);
bool stratified(const ConstraintSet& sigma, ChaseMode mode, FiringCache* cache = nullptr);

// Topologically sorted components of the chase graph; none when not stratified.
std::optional<std::vector<std::vector<std::string>>> terminating_order(const ConstraintSet& sigma,
                                                                       FiringCache* cache = nullptr);

// Stages for the scc-order policy: the terminating order, or the plain condensation
// order of the chase graph when the set is not stratified.
std::vector<std::vector<std::string>> chase_stages(const ConstraintSet& sigma, FiringCache* cache = nullptr);

} // namespace chaselab
