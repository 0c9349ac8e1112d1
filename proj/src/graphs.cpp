#include "chaselab/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

namespace chaselab {

std::vector<std::vector<int>> strongly_connected_components(const std::vector<std::vector<int>>& adj) {
    const int n = int(adj.size());
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int counter = 0;

    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w : adj[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);
    // Tarjan emits sinks first.
    std::reverse(out.begin(), out.end());
    return out;
}

void PositionGraph::add_edge(const Position& from, const Position& to, bool special) {
    nodes_.insert(from);
    nodes_.insert(to);
    edges_.insert({from, to, special});
}

std::optional<PositionEdge> PositionGraph::special_edge_on_cycle() const {
    std::vector<Position> order(nodes_.begin(), nodes_.end());
    std::map<Position, int> id;
    for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = int(i);
    std::vector<std::vector<int>> adj(order.size());
    for (const auto& e : edges_) adj[id[e.from]].push_back(id[e.to]);
    std::vector<int> comp(order.size());
    auto comps = strongly_connected_components(adj);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c]) comp[v] = int(c);
    for (const auto& e : edges_)
        if (e.special && comp[id[e.from]] == comp[id[e.to]]) return e;
    return std::nullopt;
}

bool PositionGraph::is_subgraph_of(const PositionGraph& other) const {
    return std::includes(other.nodes_.begin(), other.nodes_.end(), nodes_.begin(), nodes_.end()) &&
           std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end());
}

std::string dot_id(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string PositionGraph::to_dot(const std::string& name) const {
    std::ostringstream os;
    os << "digraph " << dot_id(name) << " {\n";
    for (const auto& p : nodes_) os << "  " << dot_id(to_string(p)) << ";\n";
    for (const auto& e : edges_) {
        os << "  " << dot_id(to_string(e.from)) << " -> " << dot_id(to_string(e.to));
        if (e.special) os << " [label=\"*\", style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

// Adds the edges contributed by one TGD; `eligible` filters the universal variables.
template <typename Pred>
void add_tgd_edges(PositionGraph& g, const Constraint& c, Pred eligible) {
    std::vector<Position> special_targets;
    for (const auto& y : c.existentials())
        for (const auto& p : c.positions_of(y, false)) special_targets.push_back(p);
    for (const auto& x : c.head_universals()) {
        if (!eligible(x)) continue;
        auto targets = c.positions_of(x, false);
        for (const auto& from : c.positions_of(x, true)) {
            for (const auto& to : targets) g.add_edge(from, to, false);
            for (const auto& to : special_targets) g.add_edge(from, to, true);
        }
    }
}

} // namespace

PositionGraph dependency_graph(const ConstraintSet& sigma) {
    PositionGraph g;
    for (const auto& c : sigma) {
        if (!c.is_tgd()) continue;
        for (const auto& p : c.body_positions()) g.add_node(p);
        for (const auto& p : c.head_positions()) g.add_node(p);
        add_tgd_edges(g, c, [](const Term&) { return true; });
    }
    return g;
}

PositionSet affected_positions(const ConstraintSet& sigma) {
    PositionSet aff;
    for (const auto& c : sigma)
        if (c.is_tgd())
            for (const auto& y : c.existentials())
                for (const auto& p : c.positions_of(y, false)) aff.insert(p);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : sigma) {
            if (!c.is_tgd()) continue;
            for (const auto& x : c.head_universals()) {
                auto body = c.positions_of(x, true);
                if (!std::all_of(body.begin(), body.end(), [&](const Position& p) { return aff.count(p) != 0; }))
                    continue;
                for (const auto& p : c.positions_of(x, false)) changed |= aff.insert(p).second;
            }
        }
    }
    return aff;
}

PositionGraph propagation_graph(const ConstraintSet& sigma) {
    PositionSet aff = affected_positions(sigma);
    PositionGraph g;
    for (const auto& p : aff) g.add_node(p);
    for (const auto& c : sigma) {
        if (!c.is_tgd()) continue;
        add_tgd_edges(g, c, [&](const Term& x) {
            auto body = c.positions_of(x, true);
            return std::all_of(body.begin(), body.end(), [&](const Position& p) { return aff.count(p) != 0; });
        });
    }
    return g;
}

bool weakly_acyclic(const ConstraintSet& sigma) { return !dependency_graph(sigma).special_edge_on_cycle(); }

bool safe(const ConstraintSet& sigma) { return !propagation_graph(sigma).special_edge_on_cycle(); }

namespace {

std::vector<std::vector<int>> adjacency(const ConstraintGraph& g, std::map<std::string, int>& id) {
    for (std::size_t i = 0; i < g.nodes().size(); ++i) id[g.nodes()[i]] = int(i);
    std::vector<std::vector<int>> adj(g.nodes().size());
    for (const auto& [a, b] : g.edges()) adj[id.at(a)].push_back(id.at(b));
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

} // namespace

std::vector<std::vector<std::string>> ConstraintGraph::components() const {
    std::map<std::string, int> id;
    auto adj = adjacency(*this, id);
    auto comps = strongly_connected_components(adj);

    // Kahn over the condensation, ties broken by the smallest member index.
    std::vector<int> comp_of(nodes_.size());
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c]) comp_of[v] = int(c);
    std::vector<std::set<int>> succ(comps.size());
    std::vector<int> indegree(comps.size(), 0);
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (int w : adj[v])
            if (comp_of[v] != comp_of[w] && succ[comp_of[v]].insert(comp_of[w]).second) ++indegree[comp_of[w]];
    using Entry = std::pair<int, int>;  // (smallest member, component)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
    for (std::size_t c = 0; c < comps.size(); ++c)
        if (indegree[c] == 0) ready.emplace(comps[c].front(), int(c));
    std::vector<std::vector<std::string>> out;
    while (!ready.empty()) {
        int c = ready.top().second;
        ready.pop();
        std::vector<std::string> names;
        for (int v : comps[c]) names.push_back(nodes_[v]);
        out.push_back(std::move(names));
        for (int d : succ[c])
            if (--indegree[d] == 0) ready.emplace(comps[d].front(), d);
    }
    return out;
}

std::vector<std::vector<std::string>> ConstraintGraph::cyclic_components() const {
    std::vector<std::vector<std::string>> out;
    for (auto& comp : components())
        if (comp.size() > 1 || has_edge(comp.front(), comp.front())) out.push_back(std::move(comp));
    return out;
}

std::set<std::string> ConstraintGraph::reachable_from(const std::string& from) const {
    std::set<std::string> seen{from};
    std::vector<std::string> todo{from};
    while (!todo.empty()) {
        std::string v = todo.back();
        todo.pop_back();
        for (auto it = edges_.lower_bound({v, ""}); it != edges_.end() && it->first == v; ++it)
            if (seen.insert(it->second).second) todo.push_back(it->second);
    }
    return seen;
}

std::string ConstraintGraph::to_dot(const std::string& name) const {
    std::ostringstream os;
    os << "digraph " << dot_id(name) << " {\n";
    for (const auto& n : nodes_) os << "  " << dot_id(n) << ";\n";
    for (const auto& [a, b] : edges_) os << "  " << dot_id(a) << " -> " << dot_id(b) << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace chaselab
