#include "chaselab/hierarchy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chaselab {

PositionSet aff_cl(const Constraint& alpha, const PositionSet& allowed) {
    PositionSet out;
    if (!alpha.is_tgd()) return out;
    std::set<Term> existential(alpha.existentials().begin(), alpha.existentials().end());
    std::map<Position, std::vector<Term>> at;
    for (const auto& a : alpha.head())
        for (std::size_t i = 0; i < a.args.size(); ++i) at[{a.predicate, int(i + 1)}].push_back(a.args[i]);
    for (const auto& [pos, terms] : at) {
        bool has_existential = false, has_universal = false, universals_inside = true;
        for (const auto& t : terms) {
            if (!t.is_variable()) continue;
            if (existential.count(t)) {
                has_existential = true;
                continue;
            }
            has_universal = true;
            for (const auto& p : alpha.positions_of(t, true))
                if (!allowed.count(p)) universals_inside = false;
        }
        if (has_existential || (has_universal && universals_inside)) out.insert(pos);
    }
    return out;
}

namespace {

std::vector<Constraint> pick(const ConstraintSet& sigma, const std::vector<std::size_t>& idx) {
    std::vector<Constraint> out;
    for (auto i : idx) out.push_back(sigma[i]);
    return out;
}

bool closes(const ConstraintSet& sigma, int k, const ConstraintGraph& g, PositionSet& f) {
    const PositionSet body = positions_of(sigma);
    bool grew = false;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : g.edges()) {
            std::vector<const Constraint*> ends{sigma.find(a)};
            if (k == 2) ends.push_back(sigma.find(b));
            for (const auto* c : ends)
                for (const auto& p : aff_cl(*c, f))
                    if (body.count(p) && f.insert(p).second) changed = grew = true;
        }
    }
    return grew;
}

} // namespace

RestrictionSystem minimal_restriction_system(const ConstraintSet& sigma, int k, FiringCache* cache) {
    if (k < 2) throw std::invalid_argument("restriction systems need k >= 2");
    FiringCache local;
    FiringCache& memo = cache ? *cache : local;
    RestrictionSystem rs{k, ConstraintGraph(sigma.labels()), {}};
    const std::size_t n = sigma.size();
    if (n == 0) return rs;

    for (;;) {
        closes(sigma, k, rs.graph, rs.f);
        bool added = false;
        std::vector<std::size_t> idx(k, 0);
        for (;;) {
            bool missing = false;
            for (int i = 0; i + 1 < k && !missing; ++i)
                missing = !rs.graph.has_edge(sigma[idx[i]].label(), sigma[idx[i + 1]].label());
            if (missing && memo.fires_before_kp(pick(sigma, idx), rs.f)) {
                for (int i = 0; i + 1 < k; ++i) rs.graph.add_edge(sigma[idx[i]].label(), sigma[idx[i + 1]].label());
                added = true;
            }
            int d = k - 1;
            while (d >= 0 && ++idx[d] == n) idx[d--] = 0;
            if (d < 0) break;
        }
        if (!added) break;
    }
    return rs;
}

namespace {

ConstraintSet as_set(const ConstraintSet& sigma, const std::vector<std::string>& labels) {
    return sigma.subset(std::set<std::string>(labels.begin(), labels.end()));
}

} // namespace

std::vector<ConstraintSet> part(const ConstraintSet& sigma, int k, FiringCache* cache) {
    auto comps = minimal_restriction_system(sigma, k, cache).graph.cyclic_components();
    if (comps.size() == 1) {
        if (comps.front().size() != sigma.size()) return part(as_set(sigma, comps.front()), k, cache);
        return {sigma};
    }
    std::vector<ConstraintSet> out;
    for (const auto& comp : comps)
        for (auto& s : part(as_set(sigma, comp), k, cache)) out.push_back(std::move(s));
    return out;
}

bool inductively_restricted(const ConstraintSet& sigma, FiringCache* cache) {
    FiringCache local;
    auto parts = part(sigma, 2, cache ? cache : &local);
    return std::all_of(parts.begin(), parts.end(), [](const ConstraintSet& s) { return safe(s); });
}

namespace {

bool check(const ConstraintSet& sigma, int k, FiringCache& cache);

bool sub(const ConstraintSet& sigma, int k, FiringCache& cache) {
    if (safe(sigma)) return true;
    auto comps = minimal_restriction_system(sigma, k, &cache).graph.cyclic_components();
    if (comps.empty()) return true;
    if (comps.size() == 1) {
        if (comps.front().size() != sigma.size()) return check(as_set(sigma, comps.front()), k, cache);
        return false;
    }
    return std::all_of(comps.begin(), comps.end(),
                       [&](const auto& comp) { return check(as_set(sigma, comp), k, cache); });
}

bool check(const ConstraintSet& sigma, int k, FiringCache& cache) {
    for (int i = k; i >= 2; --i)
        if (sub(sigma, i, cache)) return true;
    return false;
}

} // namespace

bool t_member(const ConstraintSet& sigma, int k, FiringCache* cache) {
    if (k < 2) throw std::invalid_argument("hierarchy levels start at 2");
    FiringCache local;
    return check(sigma, k, cache ? *cache : local);
}

std::optional<int> t_level(const ConstraintSet& sigma, int max_k, FiringCache* cache) {
    FiringCache local;
    FiringCache& memo = cache ? *cache : local;
    for (int k = 2; k <= max_k; ++k)
        if (check(sigma, k, memo)) return k;
    return std::nullopt;
}

std::optional<std::vector<std::string>> stratification_violation(const ConstraintSet& sigma, ChaseMode mode,
                                                                 FiringCache* cache) {
    for (const auto& comp : chase_graph(sigma, mode, cache).cyclic_components())
        if (!weakly_acyclic(as_set(sigma, comp))) return comp;
    return std::nullopt;
}

bool stratified(const ConstraintSet& sigma, ChaseMode mode, FiringCache* cache) {
    return !stratification_violation(sigma, mode, cache);
}

std::optional<std::vector<std::vector<std::string>>> terminating_order(const ConstraintSet& sigma,
                                                                       FiringCache* cache) {
    auto g = chase_graph(sigma, ChaseMode::Standard, cache);
    for (const auto& comp : g.cyclic_components())
        if (!weakly_acyclic(as_set(sigma, comp))) return std::nullopt;
    return g.components();
}

std::vector<std::vector<std::string>> chase_stages(const ConstraintSet& sigma, FiringCache* cache) {
    return chase_graph(sigma, ChaseMode::Standard, cache).components();
}

} // namespace chaselab
