#pragma once

#include "chaselab/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chaselab {

enum class ChaseMode { Standard, Oblivious };

std::string to_string(ChaseMode m);

struct FreshNull {
    Term null;
    PositionSet positions;
};

struct ChaseStepRecord {
    int ordinal = 0;
    std::string constraint;
    std::vector<Term> args;  // images of the universal variables
    ChaseMode kind = ChaseMode::Standard;
    std::vector<FreshNull> fresh_nulls;
    std::optional<std::pair<Term, Term>> substitution;  // EGD steps: (replaced, replacement)
};

} // namespace chaselab
