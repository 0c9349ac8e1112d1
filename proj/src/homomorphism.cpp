#include "chaselab/homomorphism.hpp"

#include <algorithm>
#include <numeric>

namespace chaselab {

std::optional<Term> Homomorphism::lookup(const Term& var) const {
    auto it = map_.find(var);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

Term Homomorphism::apply(const Term& t) const {
    if (!t.is_variable()) return t;
    auto it = map_.find(t);
    return it == map_.end() ? t : it->second;
}

Atom Homomorphism::apply(const Atom& a) const {
    Atom out = a;
    for (auto& t : out.args) t = apply(t);
    return out;
}

std::vector<Atom> Homomorphism::apply(const std::vector<Atom>& atoms) const {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(apply(a));
    return out;
}

namespace detail {

MatchPlan compile(const std::vector<Atom>& source, const std::vector<Term>& extra_vars) {
    MatchPlan plan;
    std::set<Term> vars(extra_vars.begin(), extra_vars.end());
    for (const auto& a : source)
        for (const auto& t : a.args)
            if (t.is_variable()) vars.insert(t);
    plan.vars.assign(vars.begin(), vars.end());
    std::sort(plan.vars.begin(), plan.vars.end(), [](const Term& a, const Term& b) { return a.name() < b.name(); });
    for (const auto& a : source) {
        MatchPlan::Pattern p{a.predicate, {}, {}};
        for (const auto& t : a.args) {
            if (t.is_variable()) {
                auto it = std::find(plan.vars.begin(), plan.vars.end(), t);
                p.slot.push_back(int(it - plan.vars.begin()));
                p.fixed.emplace_back();
            } else {
                p.slot.push_back(-1);
                p.fixed.push_back(t);
            }
        }
        plan.atoms.push_back(std::move(p));
    }
    return plan;
}

namespace {

class Search {
public:
    Search(const MatchPlan& plan, const Instance& target, std::vector<std::optional<Term>> seed,
           const std::function<bool(const std::vector<Term>&)>& emit)
        : plan_(plan), target_(target), binding_(std::move(seed)), emit_(emit) {
        binding_.resize(plan.vars.size());
        order_.resize(plan.atoms.size());
        std::iota(order_.begin(), order_.end(), 0);
        // Fewest candidate target atoms first.
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return target.with_predicate(plan.atoms[a].predicate).size() <
                   target.with_predicate(plan.atoms[b].predicate).size();
        });
    }

    bool run(std::size_t depth = 0) {
        if (depth == order_.size()) {
            std::vector<Term> out;
            out.reserve(binding_.size());
            for (const auto& b : binding_) {
                if (!b) return true;  // a variable outside the source atoms stays unbound
                out.push_back(*b);
            }
            return emit_(out);
        }
        const auto& pat = plan_.atoms[order_[depth]];
        const std::vector<std::uint32_t>* candidates = &target_.with_predicate(pat.predicate);
        // Narrow by a bound argument when one is available.
        for (std::size_t i = 0; i < pat.slot.size(); ++i) {
            std::optional<Term> v = pat.slot[i] < 0 ? std::optional<Term>(pat.fixed[i]) : binding_[pat.slot[i]];
            if (!v) continue;
            const auto& narrowed = target_.with_argument(pat.predicate, int(i + 1), *v);
            if (narrowed.size() < candidates->size()) candidates = &narrowed;
        }
        std::vector<int> newly;
        for (auto idx : *candidates) {
            const Atom& fact = target_.atoms()[idx];
            if (fact.args.size() != pat.slot.size()) continue;
            newly.clear();
            bool ok = true;
            for (std::size_t i = 0; i < pat.slot.size() && ok; ++i) {
                if (pat.slot[i] < 0) {
                    ok = fact.args[i] == pat.fixed[i];
                } else if (auto& b = binding_[pat.slot[i]]) {
                    ok = *b == fact.args[i];
                } else {
                    b = fact.args[i];
                    newly.push_back(pat.slot[i]);
                }
            }
            if (ok && !run(depth + 1)) return false;
            for (int s : newly) binding_[s].reset();
        }
        return true;
    }

private:
    const MatchPlan& plan_;
    const Instance& target_;
    std::vector<std::optional<Term>> binding_;
    const std::function<bool(const std::vector<Term>&)>& emit_;
    std::vector<std::size_t> order_;
};

} // namespace

void match(const MatchPlan& plan, const Instance& target, std::vector<std::optional<Term>> seed,
           const std::function<bool(const std::vector<Term>&)>& emit) {
    Search(plan, target, std::move(seed), emit).run();
}

bool exists_match(const MatchPlan& plan, const Instance& target, std::vector<std::optional<Term>> seed) {
    bool found = false;
    match(plan, target, std::move(seed), [&](const std::vector<Term>&) {
        found = true;
        return false;
    });
    return found;
}

bool canonical_less(const std::vector<Term>& a, const std::vector<Term>& b, const Instance& target) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] == b[i]) continue;
        auto ra = target.rank(a[i]);
        auto rb = target.rank(b[i]);
        if (ra && rb) return *ra < *rb;
        if (ra != rb) return ra.has_value();
        return a[i] < b[i];
    }
    return a.size() < b.size();
}

} // namespace detail

std::vector<Homomorphism> find_homomorphisms(const std::vector<Atom>& source, const Instance& target,
                                             const Homomorphism& seed) {
    std::vector<Term> seed_vars;
    for (const auto& [v, _] : seed.entries()) seed_vars.push_back(v);
    auto plan = detail::compile(source, seed_vars);
    std::vector<std::optional<Term>> start(plan.vars.size());
    for (std::size_t i = 0; i < plan.vars.size(); ++i) start[i] = seed.lookup(plan.vars[i]);

    std::vector<std::vector<Term>> found;
    detail::match(plan, target, start, [&](const std::vector<Term>& images) {
        found.push_back(images);
        return true;
    });
    std::sort(found.begin(), found.end(),
              [&](const auto& a, const auto& b) { return detail::canonical_less(a, b, target); });
    found.erase(std::unique(found.begin(), found.end()), found.end());

    std::vector<Homomorphism> out;
    out.reserve(found.size());
    for (const auto& images : found) {
        Homomorphism h;
        for (std::size_t i = 0; i < plan.vars.size(); ++i) h.bind(plan.vars[i], images[i]);
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<Term> grounding_of(const Constraint& c, const Homomorphism& h) {
    std::vector<Term> out;
    for (const auto& u : c.universals()) out.push_back(h.apply(u));
    return out;
}

Homomorphism from_grounding(const Constraint& c, const std::vector<Term>& args) {
    if (args.size() != c.universals().size())
        throw std::invalid_argument("constraint " + c.label() + " expects " +
                                    std::to_string(c.universals().size()) + " arguments, got " +
                                    std::to_string(args.size()));
    Homomorphism h;
    for (std::size_t i = 0; i < args.size(); ++i) h.bind(c.universals()[i], args[i]);
    return h;
}

bool satisfies_grounded(const Instance& inst, const Constraint& c, const std::vector<Term>& args) {
    auto h = from_grounding(c, args);
    for (const auto& a : c.body())
        if (!inst.contains(h.apply(a))) return true;
    if (c.is_egd()) return h.apply(c.lhs()) == h.apply(c.rhs());
    auto head = h.apply(c.head());
    auto plan = detail::compile(head);
    return detail::exists_match(plan, inst, std::vector<std::optional<Term>>(plan.vars.size()));
}

bool satisfies(const Instance& inst, const Constraint& c) {
    auto plan = detail::compile(c.body(), c.universals());
    bool ok = true;
    detail::match(plan, inst, std::vector<std::optional<Term>>(plan.vars.size()), [&](const std::vector<Term>& g) {
        ok = satisfies_grounded(inst, c, g);
        return ok;
    });
    return ok;
}

bool satisfies(const Instance& inst, const ConstraintSet& sigma) {
    return std::all_of(sigma.begin(), sigma.end(), [&](const Constraint& c) { return satisfies(inst, c); });
}

} // namespace chaselab
