#include "chaselab/guardedness.hpp"

#include "chaselab/graphs.hpp"
#include "chaselab/hierarchy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chaselab {

namespace {

GuardReport guards_for(const ConstraintSet& sigma, PositionSet basis) {
    GuardReport r;
    r.basis = std::move(basis);
    for (const auto& c : sigma) {
        std::set<Term> needed;
        for (const auto& a : c.body())
            for (std::size_t i = 0; i < a.args.size(); ++i)
                if (a.args[i].is_variable() && r.basis.count({a.predicate, int(i + 1)})) needed.insert(a.args[i]);
        std::optional<std::size_t> guard;
        for (std::size_t j = 0; j < c.body().size() && !guard; ++j) {
            const auto& args = c.body()[j].args;
            std::set<Term> here(args.begin(), args.end());
            if (std::includes(here.begin(), here.end(), needed.begin(), needed.end())) guard = j;
        }
        r.guards.push_back(guard);
        if (!guard && !needed.empty() && r.holds) {
            r.holds = false;
            r.violator = c.label();
        }
    }
    return r;
}

void require_tgds(const ConstraintSet& sigma) {
    if (sigma.has_egds()) throw std::invalid_argument("guardedness is defined for TGD sets only");
}

} // namespace

GuardReport weakly_guarded(const ConstraintSet& sigma) {
    require_tgds(sigma);
    return guards_for(sigma, affected_positions(sigma));
}

GuardReport restrictedly_guarded(const ConstraintSet& sigma, FiringCache* cache) {
    require_tgds(sigma);
    return guards_for(sigma, minimal_restriction_system(sigma, 2, cache).f);
}

} // namespace chaselab
