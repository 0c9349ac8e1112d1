#pragma once

#include "chaselab/step.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace chaselab {

struct MonitorNode {
    Term null;
    PositionSet created_at;
};

struct MonitorEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string constraint;
    PositionSet body_positions;  // where the source null occurs in the grounded body
};

struct MonitorConfig {
    int k = 3;
};

// Provenance graph of the nulls created during one chase run.
class MonitorGraph {
public:
    // No-op for EGD steps and for TGD steps that create no null.
    void extend(const ChaseStepRecord& step, const std::vector<Atom>& grounded_body);

    // Some path contains k distinct edges with equal (source positions, constraint,
    // body positions, target positions).
    bool is_k_cyclic(int k) const { return k <= 0 || longest_repeat_ >= k; }
    int longest_repeat() const { return longest_repeat_; }

    const std::vector<MonitorNode>& nodes() const { return nodes_; }
    const std::vector<MonitorEdge>& edges() const { return edges_; }
    std::optional<std::size_t> node_of(const Term& null) const;
    int depth(std::size_t node) const { return depth_[node]; }
    bool empty() const { return nodes_.empty(); }

private:
    using Projection = std::tuple<PositionSet, std::string, PositionSet, PositionSet>;

    std::vector<MonitorNode> nodes_;
    std::vector<MonitorEdge> edges_;
    std::vector<int> depth_;
    std::unordered_map<std::uint64_t, std::size_t> by_null_;
    std::map<Projection, int> classes_;
    // Per node: projection class -> most edges of that class on a path ending here.
    std::vector<std::unordered_map<int, int>> repeats_;
    int longest_repeat_ = 0;
};

} // namespace chaselab
