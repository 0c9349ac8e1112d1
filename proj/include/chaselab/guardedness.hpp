#pragma once

#include "chaselab/firing.hpp"
#include "chaselab/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chaselab {

struct GuardReport {
    bool holds = true;
    // Per constraint, in declaration order: index of the first body atom that guards it.
    std::vector<std::optional<std::size_t>> guards;
    // Positions whose variables need guarding.
    PositionSet basis;
    // First constraint without a guard.
    std::optional<std::string> violator;
};

// Both throw std::invalid_argument when sigma contains an EGD.
GuardReport weakly_guarded(const ConstraintSet& sigma);
GuardReport restrictedly_guarded(const ConstraintSet& sigma, FiringCache* cache = nullptr);

} // namespace chaselab
