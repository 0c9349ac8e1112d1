#include "chaselab/chase.hpp"

#include "chaselab/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace chaselab {

std::string to_string(Policy p) {
    switch (p) {
    case Policy::RoundRobin: return "round-robin";
    case Policy::FifoViolations: return "fifo-violations";
    case Policy::SccOrder: return "scc-order";
    }
    return "?";
}

std::string to_string(ChaseStatus s) {
    switch (s) {
    case ChaseStatus::Terminated: return "terminated";
    case ChaseStatus::Failed: return "failed";
    case ChaseStatus::BudgetExhausted: return "budget-exhausted";
    case ChaseStatus::AbortedByMonitor: return "aborted-by-monitor";
    }
    return "?";
}

std::optional<Policy> policy_from_string(std::string_view s) {
    for (auto p : {Policy::RoundRobin, Policy::FifoViolations, Policy::SccOrder})
        if (to_string(p) == s) return p;
    return std::nullopt;
}

void NullSupply::avoid(const Instance& inst) {
    for (const auto& t : inst.domain())
        if (t.is_null()) taken_.insert(t.symbol().id());
}

Term NullSupply::next() {
    for (;;) {
        Term t = Term::null(prefix_ + std::to_string(++counter_));
        if (taken_.insert(t.symbol().id()).second) return t;
    }
}

namespace {

std::vector<FreshNull> extend_with_head(Instance& inst, const Constraint& c, Homomorphism& nu, NullSupply& nulls) {
    std::vector<FreshNull> fresh;
    for (const auto& y : c.existentials()) {
        Term n = nulls.next();
        nu.bind(y, n);
        FreshNull f{n, {}};
        for (const auto& p : c.positions_of(y, false)) f.positions.insert(p);
        fresh.push_back(std::move(f));
    }
    for (const auto& a : c.head()) inst.insert(nu.apply(a));
    return fresh;
}

bool body_holds(const Instance& inst, const Constraint& c, const Homomorphism& h) {
    return std::all_of(c.body().begin(), c.body().end(), [&](const Atom& a) { return inst.contains(h.apply(a)); });
}

std::pair<Term, Term> egd_orientation(const Term& a, const Term& b) {
    // Returns (eliminated, kept).
    if (a.is_null() && b.is_null()) return a.name() > b.name() ? std::pair{a, b} : std::pair{b, a};
    if (a.is_null()) return {a, b};
    return {b, a};
}

} // namespace

TgdStepResult apply_tgd_step(const Instance& inst, const Constraint& c, const Homomorphism& h, ChaseMode mode,
                             NullSupply& nulls) {
    if (!c.is_tgd()) throw ChasePreconditionError(c.label() + " is not a TGD");
    if (!body_holds(inst, c, h))
        throw ChasePreconditionError("homomorphism does not map the body of " + c.label() + " into the instance");
    if (mode == ChaseMode::Standard && satisfies_grounded(inst, c, grounding_of(c, h)))
        throw ChasePreconditionError("standard step on a satisfied grounding of " + c.label());
    TgdStepResult out{inst, {}};
    Homomorphism nu = h;
    out.fresh_nulls = extend_with_head(out.instance, c, nu, nulls);
    return out;
}

EgdStepResult apply_egd_step(const Instance& inst, const Constraint& c, const Homomorphism& h) {
    if (!c.is_egd()) throw ChasePreconditionError(c.label() + " is not an EGD");
    if (!body_holds(inst, c, h))
        throw ChasePreconditionError("homomorphism does not map the body of " + c.label() + " into the instance");
    Term l = h.apply(c.lhs());
    Term r = h.apply(c.rhs());
    if (l == r) throw ChasePreconditionError("EGD " + c.label() + " already holds for this grounding");
    if (l.is_constant() && r.is_constant()) return {};
    auto [from, to] = egd_orientation(l, r);
    return {inst.substituted(from, to), std::pair{from, to}};
}

namespace {

struct Compiled {
    const Constraint* c;
    detail::MatchPlan body;
    detail::MatchPlan head;  // head with universals seeded
    std::vector<int> head_seed;  // head.vars[i] -> universal index or -1
};

class Runner {
public:
    Runner(const Instance& start, const ConstraintSet& sigma, const ChaseOptions& opt)
        : sigma_(sigma), opt_(opt), inst_(start) {
        nulls_.avoid(start);
        for (const auto& c : sigma) {
            Compiled k{&c, detail::compile(c.body(), c.universals()), {}, {}};
            if (c.is_tgd()) {
                k.head = detail::compile(c.head(), c.universals());
                for (const auto& v : k.head.vars) k.head_seed.push_back(c.universal_index(v));
            }
            compiled_.push_back(std::move(k));
        }
        if (opt.monitor) monitor_.emplace();
    }

    ChaseOutcome run() {
        switch (opt_.policy) {
        case Policy::RoundRobin: round_robin(all_indices()); break;
        case Policy::FifoViolations: fifo(); break;
        case Policy::SccOrder: scc_order(); break;
        }
        ChaseOutcome out;
        out.status = status_;
        if (status_ != ChaseStatus::Failed) out.result = std::move(inst_);
        out.log = std::move(log_);
        out.monitor = std::move(monitor_);
        return out;
    }

private:
    using Trigger = std::pair<std::size_t, std::vector<Term>>;

    std::vector<std::size_t> all_indices() const {
        std::vector<std::size_t> v(sigma_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        return v;
    }

    bool active(std::size_t ci, const std::vector<Term>& args) const {
        const auto& k = compiled_[ci];
        const Constraint& c = *k.c;
        if (c.is_egd()) {
            int l = c.universal_index(c.lhs());
            int r = c.universal_index(c.rhs());
            return !(args[l] == args[r]);
        }
        if (opt_.mode == ChaseMode::Oblivious) return !applied_.count({ci, args});
        std::vector<std::optional<Term>> seed(k.head.vars.size());
        for (std::size_t i = 0; i < seed.size(); ++i)
            if (k.head_seed[i] >= 0) seed[i] = args[k.head_seed[i]];
        return !detail::exists_match(k.head, inst_, std::move(seed));
    }

    // Active triggers of one constraint in canonical order.
    std::vector<std::vector<Term>> active_triggers(std::size_t ci) const {
        const auto& k = compiled_[ci];
        std::vector<std::vector<Term>> out;
        detail::match(k.body, inst_, std::vector<std::optional<Term>>(k.body.vars.size()),
                      [&](const std::vector<Term>& g) {
                          if (active(ci, g)) out.push_back(g);
                          return true;
                      });
        std::sort(out.begin(), out.end(),
                  [&](const auto& a, const auto& b) { return detail::canonical_less(a, b, inst_); });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::optional<std::vector<Term>> first_active(std::size_t ci) const {
        const auto& k = compiled_[ci];
        std::optional<std::vector<Term>> best;
        detail::match(k.body, inst_, std::vector<std::optional<Term>>(k.body.vars.size()),
                      [&](const std::vector<Term>& g) {
                          if ((!best || detail::canonical_less(g, *best, inst_)) && active(ci, g)) best = g;
                          return true;
                      });
        return best;
    }

    bool finished() const { return status_ != ChaseStatus::Terminated; }

    // Applies one trigger; returns false when the run must stop.
    bool fire(std::size_t ci, const std::vector<Term>& args) {
        if (log_.size() >= opt_.budget) {
            status_ = ChaseStatus::BudgetExhausted;
            return false;
        }
        const Constraint& c = *compiled_[ci].c;
        Homomorphism h = from_grounding(c, args);
        ChaseStepRecord rec{int(log_.size() + 1), c.label(), args, opt_.mode, {}, std::nullopt};
        if (c.is_tgd()) {
            if (opt_.mode == ChaseMode::Oblivious) applied_.insert({ci, args});
            rec.fresh_nulls = extend_with_head(inst_, c, h, nulls_);
            log_.push_back(rec);
            if (monitor_ && !rec.fresh_nulls.empty()) {
                monitor_->extend(log_.back(), Homomorphism(h).apply(c.body()));
                if (monitor_->is_k_cyclic(opt_.monitor->k)) {
                    status_ = ChaseStatus::AbortedByMonitor;
                    return false;
                }
            }
            return true;
        }
        Term l = h.apply(c.lhs());
        Term r = h.apply(c.rhs());
        if (l.is_constant() && r.is_constant()) {
            log_.push_back(rec);
            status_ = ChaseStatus::Failed;
            return false;
        }
        auto [from, to] = egd_orientation(l, r);
        rec.substitution = std::pair{from, to};
        inst_ = inst_.substituted(from, to);
        log_.push_back(rec);
        return true;
    }

    // Cycles through `members`; returns true when at least one step was taken.
    bool round_robin(const std::vector<std::size_t>& members) {
        bool any = false;
        std::size_t next = 0;
        while (!members.empty()) {
            bool fired = false;
            for (std::size_t i = 0; i < members.size(); ++i) {
                std::size_t slot = (next + i) % members.size();
                auto t = first_active(members[slot]);
                if (!t) continue;
                if (!fire(members[slot], *t)) return any;
                any = fired = true;
                next = (slot + 1) % members.size();
                break;
            }
            if (!fired) break;
        }
        return any;
    }

    void fifo() {
        std::deque<Trigger> queue;
        std::set<Trigger> queued;
        auto scan = [&] {
            for (std::size_t ci = 0; ci < compiled_.size(); ++ci)
                for (auto& t : active_triggers(ci)) {
                    Trigger tr{ci, std::move(t)};
                    if (queued.insert(tr).second) queue.push_back(tr);
                }
        };
        scan();
        while (!queue.empty()) {
            Trigger tr = std::move(queue.front());
            queue.pop_front();
            queued.erase(tr);
            const auto& k = compiled_[tr.first];
            if (!body_holds(inst_, *k.c, from_grounding(*k.c, tr.second)) || !active(tr.first, tr.second)) continue;
            if (!fire(tr.first, tr.second)) return;
            scan();
        }
    }

    void scc_order() {
        auto stages = opt_.stages.empty() ? chase_stages(sigma_) : opt_.stages;
        std::vector<std::vector<std::size_t>> groups;
        std::set<std::size_t> covered;
        for (const auto& stage : stages) {
            std::vector<std::size_t> g;
            for (const auto& label : stage)
                for (std::size_t i = 0; i < sigma_.size(); ++i)
                    if (sigma_[i].label() == label && covered.insert(i).second) g.push_back(i);
            if (!g.empty()) groups.push_back(std::move(g));
        }
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < sigma_.size(); ++i)
            if (!covered.count(i)) rest.push_back(i);
        if (!rest.empty()) groups.push_back(std::move(rest));

        for (;;) {
            bool progress = false;
            for (const auto& g : groups) {
                progress |= round_robin(g);
                if (finished()) return;
            }
            if (!progress) return;
        }
    }

    const ConstraintSet& sigma_;
    const ChaseOptions& opt_;
    Instance inst_;
    NullSupply nulls_;
    std::vector<Compiled> compiled_;
    std::set<Trigger> applied_;
    std::vector<ChaseStepRecord> log_;
    std::optional<MonitorGraph> monitor_;
    ChaseStatus status_ = ChaseStatus::Terminated;
};

} // namespace

ChaseOutcome chase(const Instance& start, const ConstraintSet& sigma, const ChaseOptions& options) {
    return Runner(start, sigma, options).run();
}

bool guarded_null_property_check(const Instance& start, const ChaseStepRecord& step, const Instance&,
                                 const Constraint& c) {
    if (!c.is_tgd()) return true;
    Homomorphism h = from_grounding(c, step.args);
    std::set<Term> required;
    for (const auto& a : c.head())
        for (const auto& t : h.apply(a).args)
            if (t.is_null() && !start.contains_term(t)) required.insert(t);
    if (required.empty()) return true;
    for (const auto& a : c.body()) {
        auto g = h.apply(a);
        std::set<Term> here(g.args.begin(), g.args.end());
        if (std::includes(here.begin(), here.end(), required.begin(), required.end())) return true;
    }
    return false;
}

} // namespace chaselab
