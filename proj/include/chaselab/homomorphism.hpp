#pragma once

#include "chaselab/model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace chaselab {

// Mapping from variables (and, implicitly, constants to themselves) to ground terms.
class Homomorphism {
public:
    Homomorphism() = default;

    void bind(const Term& var, const Term& value) { map_[var] = value; }
    bool binds(const Term& var) const { return map_.count(var) != 0; }
    std::optional<Term> lookup(const Term& var) const;

    // Constants and nulls map to themselves; unbound variables are returned unchanged.
    Term apply(const Term& t) const;
    Atom apply(const Atom& a) const;
    std::vector<Atom> apply(const std::vector<Atom>& atoms) const;

    const std::map<Term, Term>& entries() const { return map_; }
    std::size_t size() const { return map_.size(); }

    friend bool operator==(const Homomorphism& a, const Homomorphism& b) { return a.map_ == b.map_; }

private:
    std::map<Term, Term> map_;
};

// Every extension of `seed` mapping all of `source` into `target`, sorted by the
// images of the variables taken in name order, terms compared by first appearance in
// `target`.
std::vector<Homomorphism> find_homomorphisms(const std::vector<Atom>& source, const Instance& target,
                                             const Homomorphism& seed = {});

bool satisfies(const Instance& inst, const Constraint& c);
bool satisfies(const Instance& inst, const ConstraintSet& sigma);

// `args` lists the images of c.universals() in order.
bool satisfies_grounded(const Instance& inst, const Constraint& c, const std::vector<Term>& args);

// Grounding tuple of a homomorphism for c.universals().
std::vector<Term> grounding_of(const Constraint& c, const Homomorphism& h);
Homomorphism from_grounding(const Constraint& c, const std::vector<Term>& args);

namespace detail {

// Variables of `source` in name order; slot i of a match holds the image of vars[i].
struct MatchPlan {
    std::vector<Term> vars;
    struct Pattern {
        Symbol predicate;
        std::vector<int> slot;  // -1 where the argument is fixed
        std::vector<Term> fixed;
    };
    std::vector<Pattern> atoms;
};

MatchPlan compile(const std::vector<Atom>& source, const std::vector<Term>& extra_vars = {});

// Calls `emit` with every total match extending `seed` (unbound entries are nullopt).
// Enumeration stops when `emit` returns false. Order is search order, not canonical.
void match(const MatchPlan& plan, const Instance& target, std::vector<std::optional<Term>> seed,
           const std::function<bool(const std::vector<Term>&)>& emit);

bool exists_match(const MatchPlan& plan, const Instance& target, std::vector<std::optional<Term>> seed);

// Canonical comparison of two image vectors relative to `target`.
bool canonical_less(const std::vector<Term>& a, const std::vector<Term>& b, const Instance& target);

} // namespace detail

} // namespace chaselab
