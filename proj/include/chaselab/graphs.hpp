#pragma once

#include "chaselab/model.hpp"

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace chaselab {

// Components of a graph given as adjacency lists, listed so that every edge between
// two components goes from an earlier one to a later one.
std::vector<std::vector<int>> strongly_connected_components(const std::vector<std::vector<int>>& adjacency);

struct PositionEdge {
    Position from;
    Position to;
    bool special = false;

    friend bool operator<(const PositionEdge& a, const PositionEdge& b) {
        return std::tie(a.from, a.to, a.special) < std::tie(b.from, b.to, b.special);
    }
    friend bool operator==(const PositionEdge& a, const PositionEdge& b) {
        return a.from == b.from && a.to == b.to && a.special == b.special;
    }
};

class PositionGraph {
public:
    void add_node(const Position& p) { nodes_.insert(p); }
    void add_edge(const Position& from, const Position& to, bool special);

    const PositionSet& nodes() const { return nodes_; }
    const std::set<PositionEdge>& edges() const { return edges_; }
    bool has_edge(const Position& from, const Position& to, bool special) const {
        return edges_.count({from, to, special}) != 0;
    }

    // A special edge whose endpoints share a strongly connected component, if any.
    std::optional<PositionEdge> special_edge_on_cycle() const;
    bool is_subgraph_of(const PositionGraph& other) const;

    std::string to_dot(const std::string& name) const;

private:
    PositionSet nodes_;
    std::set<PositionEdge> edges_;
};

PositionGraph dependency_graph(const ConstraintSet& sigma);
PositionSet affected_positions(const ConstraintSet& sigma);
PositionGraph propagation_graph(const ConstraintSet& sigma);
bool weakly_acyclic(const ConstraintSet& sigma);
bool safe(const ConstraintSet& sigma);

class ConstraintGraph {
public:
    ConstraintGraph() = default;
    explicit ConstraintGraph(std::vector<std::string> nodes) : nodes_(std::move(nodes)) {}

    void add_edge(const std::string& from, const std::string& to) { edges_.emplace(from, to); }
    bool has_edge(const std::string& from, const std::string& to) const { return edges_.count({from, to}) != 0; }

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }

    // Components in topological order of the condensation, members in node order.
    std::vector<std::vector<std::string>> components() const;
    // Components holding a cycle: two or more members, or one member with a self-loop.
    std::vector<std::vector<std::string>> cyclic_components() const;
    // Nodes reachable from `from`, including `from` itself.
    std::set<std::string> reachable_from(const std::string& from) const;

    std::string to_dot(const std::string& name) const;

    friend bool operator==(const ConstraintGraph& a, const ConstraintGraph& b) {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

private:
    std::vector<std::string> nodes_;
    std::set<std::pair<std::string, std::string>> edges_;
};

// Quotes an identifier for DOT output.
std::string dot_id(const std::string& s);

} // namespace chaselab
