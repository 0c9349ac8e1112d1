#include "chaselab/data_dependent.hpp"

#include "chaselab/hierarchy.hpp"

#include <map>
#include <stdexcept>

namespace chaselab {

Constraint alpha_I(const Instance& inst, const ConstraintSet& avoid, std::string label) {
    if (inst.empty()) throw std::invalid_argument("alpha_I needs a non-empty instance");
    while (avoid.find(label)) label += "'";
    std::map<Term, Term> vars;
    std::vector<Term> existentials;
    std::vector<Atom> head;
    for (const auto& a : inst) {
        Atom h = a;
        for (auto& t : h.args) {
            if (!t.is_null()) continue;
            auto [it, fresh] = vars.emplace(t, Term());
            if (fresh) {
                it->second = Term::variable("y" + std::to_string(vars.size()));
                existentials.push_back(it->second);
            }
            t = it->second;
        }
        head.push_back(std::move(h));
    }
    return Constraint::tgd(std::move(label), {}, std::move(existentials), std::move(head));
}

std::set<std::string> irrelevant_constraints(const Instance& inst, const ConstraintSet& sigma, ChaseMode graph_mode,
                                             FiringCache* cache) {
    for (const auto& c : sigma)
        if (c.body().empty())
            throw std::invalid_argument("irrelevance needs non-empty bodies; " + c.label() + " has none");
    Constraint start = alpha_I(inst, sigma);
    auto reach = chase_graph(sigma.with(start), graph_mode, cache).reachable_from(start.label());
    std::set<std::string> out;
    for (const auto& c : sigma)
        if (!reach.count(c.label())) out.insert(c.label());
    return out;
}

std::string to_string(Verdict v) { return v == Verdict::Terminates ? "TERMINATES" : "UNKNOWN"; }

DataDependentReport data_dependent_verdict(const Instance& inst, const ConstraintSet& sigma, int max_k,
                                           ChaseMode graph_mode, FiringCache* cache) {
    FiringCache local;
    FiringCache& memo = cache ? *cache : local;
    DataDependentReport r;
    r.irrelevant = irrelevant_constraints(inst, sigma, graph_mode, &memo);
    r.level = t_level(sigma.without(r.irrelevant), max_k, &memo);
    if (r.level) r.verdict = Verdict::Terminates;
    return r;
}

ChaseOutcome monitored_chase(const Instance& inst, const ConstraintSet& sigma, Policy policy, MonitorConfig config,
                             std::size_t budget) {
    ChaseOptions opt;
    opt.policy = policy;
    opt.budget = budget;
    opt.monitor = config;
    return chase(inst, sigma, opt);
}

} // namespace chaselab
