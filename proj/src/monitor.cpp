#include "chaselab/monitor.hpp"

#include <algorithm>

namespace chaselab {

std::string to_string(ChaseMode m) { return m == ChaseMode::Standard ? "standard" : "oblivious"; }

std::optional<std::size_t> MonitorGraph::node_of(const Term& null) const {
    auto it = by_null_.find(null.key());
    if (it == by_null_.end()) return std::nullopt;
    return it->second;
}

void MonitorGraph::extend(const ChaseStepRecord& step, const std::vector<Atom>& grounded_body) {
    if (step.fresh_nulls.empty()) return;

    // Existing nodes whose null occurs in the grounded body, with the positions.
    std::map<std::size_t, PositionSet> sources;
    for (const auto& a : grounded_body)
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (auto n = node_of(a.args[i])) sources[*n].insert({a.predicate, int(i + 1)});

    std::size_t first_new = nodes_.size();
    for (const auto& fresh : step.fresh_nulls) {
        by_null_[fresh.null.key()] = nodes_.size();
        nodes_.push_back({fresh.null, fresh.positions});
        depth_.push_back(0);
        repeats_.emplace_back();
    }
    for (std::size_t to = first_new; to < nodes_.size(); ++to) {
        for (const auto& [from, positions] : sources) {
            edges_.push_back({from, to, step.constraint, positions});
            Projection key{nodes_[from].created_at, step.constraint, positions, nodes_[to].created_at};
            auto [it, _] = classes_.emplace(key, int(classes_.size()));
            int cls = it->second;

            depth_[to] = std::max(depth_[to], depth_[from] + 1);
            auto& mine = repeats_[to];
            for (const auto& [c, count] : repeats_[from]) mine[c] = std::max(mine[c], count);
            int through = (repeats_[from].count(cls) ? repeats_[from].at(cls) : 0) + 1;
            mine[cls] = std::max(mine[cls], through);
            longest_repeat_ = std::max(longest_repeat_, mine[cls]);
        }
    }
}

} // namespace chaselab
