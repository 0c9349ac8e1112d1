#include "chaselab/report.hpp"

#include "chaselab/guardedness.hpp"
#include "chaselab/parser.hpp"

#include <sstream>

namespace chaselab {

using nlohmann::json;

namespace {

json positions_json(const PositionSet& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(to_string(p));
    return out;
}

json terms_json(const std::vector<Term>& ts) {
    json out = json::array();
    for (const auto& t : ts) out.push_back(serialize(t));
    return out;
}

json instance_json(const Instance& inst) {
    json out = json::array();
    for (const auto& a : inst) out.push_back(serialize(a));
    return out;
}

json guard_json(const GuardReport& g, const ConstraintSet& sigma) {
    json guards = json::object();
    for (std::size_t i = 0; i < sigma.size(); ++i)
        guards[sigma[i].label()] = g.guards[i] ? json(to_string(sigma[i].body()[*g.guards[i]])) : json(nullptr);
    json out{{"basis", positions_json(g.basis)}, {"guards", guards}};
    out["violator"] = g.violator ? json(*g.violator) : json(nullptr);
    return out;
}

json special_edge_json(const std::optional<PositionEdge>& e) {
    if (!e) return nullptr;
    return json{{"from", to_string(e->from)}, {"to", to_string(e->to)}};
}

} // namespace

ClassificationReport classify(const ConstraintSet& sigma, int max_k, FiringCache* cache) {
    if (max_k < 2) throw std::invalid_argument("max_k must be at least 2");
    FiringCache local;
    FiringCache& memo = cache ? *cache : local;
    ClassificationReport r;
    r.max_k = max_k;
    r.has_egds = sigma.has_egds();

    auto dep_cycle = dependency_graph(sigma).special_edge_on_cycle();
    auto prop_cycle = propagation_graph(sigma).special_edge_on_cycle();
    r.weakly_acyclic = !dep_cycle;
    r.safe = !prop_cycle;
    r.witnesses["weakly_acyclic"] = {{"special_edge_on_cycle", special_edge_json(dep_cycle)}};
    r.witnesses["safe"] = {{"affected", positions_json(affected_positions(sigma))},
                           {"special_edge_on_cycle", special_edge_json(prop_cycle)}};

    auto std_bad = stratification_violation(sigma, ChaseMode::Standard, &memo);
    auto obl_bad = stratification_violation(sigma, ChaseMode::Oblivious, &memo);
    r.stratified = !std_bad;
    r.c_stratified = !obl_bad;
    r.witnesses["stratified"] = {{"chase_graph", to_json(chase_graph(sigma, ChaseMode::Standard, &memo))},
                                 {"violating_component", std_bad ? json(*std_bad) : json(nullptr)}};
    r.witnesses["c_stratified"] = {{"c_chase_graph", to_json(chase_graph(sigma, ChaseMode::Oblivious, &memo))},
                                   {"violating_component", obl_bad ? json(*obl_bad) : json(nullptr)}};

    auto parts = part(sigma, 2, &memo);
    json unsafe = json::array();
    for (const auto& p : parts)
        if (!safe(p)) unsafe.push_back(p.labels());
    r.inductively_restricted = unsafe.empty();
    json parts_json = json::array();
    for (const auto& p : parts) parts_json.push_back(p.labels());
    r.witnesses["inductively_restricted"] = {{"restriction_system", to_json(minimal_restriction_system(sigma, 2, &memo))},
                                             {"part", parts_json},
                                             {"unsafe_parts", unsafe}};

    r.t_level = t_level(sigma, max_k, &memo);
    r.witnesses["t_level"] = {{"max_k", max_k}};

    if (!r.has_egds) {
        auto w = weakly_guarded(sigma);
        auto g = restrictedly_guarded(sigma, &memo);
        r.wgtgd = w.holds;
        r.rgtgd = g.holds;
        r.witnesses["wgtgd"] = guard_json(w, sigma);
        r.witnesses["rgtgd"] = guard_json(g, sigma);
    }
    return r;
}

json to_json(const ClassificationReport& r) {
    json out{{"weakly_acyclic", r.weakly_acyclic},
             {"safe", r.safe},
             {"stratified", r.stratified},
             {"c_stratified", r.c_stratified},
             {"inductively_restricted", r.inductively_restricted}};
    out["t_level"] = r.t_level ? json(*r.t_level) : json(nullptr);
    out["max_k"] = r.max_k;
    out["wgtgd"] = r.wgtgd ? json(*r.wgtgd) : json(nullptr);
    out["rgtgd"] = r.rgtgd ? json(*r.rgtgd) : json(nullptr);
    out["has_egds"] = r.has_egds;
    out["witnesses"] = r.witnesses;
    return out;
}

json to_json(const ChaseStepRecord& step) {
    json fresh = json::array();
    for (const auto& f : step.fresh_nulls) fresh.push_back({{"null", serialize(f.null)}, {"positions", positions_json(f.positions)}});
    json out{{"ordinal", step.ordinal},
             {"constraint", step.constraint},
             {"args", terms_json(step.args)},
             {"kind", to_string(step.kind)},
             {"fresh_nulls", fresh}};
    if (step.substitution)
        out["substitution"] = {{"from", serialize(step.substitution->first)},
                               {"to", serialize(step.substitution->second)}};
    else
        out["substitution"] = nullptr;
    return out;
}

json to_json(const ChaseOutcome& outcome) {
    json log = json::array();
    for (const auto& s : outcome.log) log.push_back(to_json(s));
    json out{{"status", to_string(outcome.status)}, {"steps", outcome.log.size()}, {"log", log}};
    out["result"] = outcome.result ? instance_json(*outcome.result) : json(nullptr);
    if (outcome.monitor) out["monitor"] = to_json(*outcome.monitor);
    return out;
}

json to_json(const MonitorGraph& g) {
    json nodes = json::array();
    for (std::size_t i = 0; i < g.nodes().size(); ++i)
        nodes.push_back({{"null", serialize(g.nodes()[i].null)},
                         {"created_at", positions_json(g.nodes()[i].created_at)},
                         {"depth", g.depth(i)}});
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"from", serialize(g.nodes()[e.from].null)},
                         {"to", serialize(g.nodes()[e.to].null)},
                         {"constraint", e.constraint},
                         {"body_positions", positions_json(e.body_positions)}});
    return {{"nodes", nodes}, {"edges", edges}, {"longest_repeat", g.longest_repeat()}};
}

json to_json(const ConstraintGraph& g) {
    json edges = json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    return {{"nodes", g.nodes()}, {"edges", edges}};
}

json to_json(const PositionGraph& g) {
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"from", to_string(e.from)}, {"to", to_string(e.to)}, {"special", e.special}});
    return {{"nodes", positions_json(g.nodes())}, {"edges", edges}};
}

json to_json(const RestrictionSystem& rs) {
    json out = to_json(rs.graph);
    out["k"] = rs.k;
    out["f"] = positions_json(rs.f);
    return out;
}

json to_json(const FiringWitness& w) {
    json args = json::array();
    for (const auto& a : w.args) args.push_back(terms_json(a));
    return {{"start", instance_json(w.start)}, {"args", args}, {"reached", instance_json(w.reached)}};
}

std::string monitor_to_dot(const MonitorGraph& g) {
    std::ostringstream os;
    os << "digraph \"monitor\" {\n";
    for (const auto& n : g.nodes())
        os << "  " << dot_id(serialize(n.null)) << " [label=" << dot_id(serialize(n.null) + " " + to_string(n.created_at))
           << "];\n";
    for (const auto& e : g.edges())
        os << "  " << dot_id(serialize(g.nodes()[e.from].null)) << " -> " << dot_id(serialize(g.nodes()[e.to].null))
           << " [label=" << dot_id(e.constraint + " " + to_string(e.body_positions)) << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace chaselab
