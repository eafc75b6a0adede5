#include "maxlin/network.hpp"

#include "maxlin/errors.hpp"

#include <algorithm>
#include <map>

namespace maxlin {

WeightedDag::WeightedDag(std::vector<std::string> labels, const std::vector<WeightedEdge>& edges)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    {
        std::set<std::string> seen;
        for (const auto& l : labels_)
            if (!seen.insert(l).second) fail(ErrorCode::Validation, "duplicate node label \"" + l + "\"");
    }
    parents_.resize(n);
    children_.resize(n);
    c_ = TropMatrix(n);
    for (const auto& e : edges) {
        if (e.from >= n || e.to >= n) fail(ErrorCode::Validation, "edge references an unknown node");
        if (e.from == e.to) fail(ErrorCode::Validation, "self-loop on \"" + labels_[e.from] + "\"");
        if (!e.weight.is_positive())
            fail(ErrorCode::Validation, "nonpositive weight on edge " + labels_[e.from] + "->" + labels_[e.to]);
        if (!edges_.insert({e.from, e.to}).second)
            fail(ErrorCode::Validation, "duplicate edge " + labels_[e.from] + "->" + labels_[e.to]);
        c_(e.to, e.from) = e.weight;
        parents_[e.to].insert(e.from);
        children_[e.from].insert(e.to);
    }

    // Kahn's algorithm with smallest-id-first tie breaking.
    std::vector<std::size_t> indegree(n);
    for (NodeId v = 0; v < n; ++v) indegree[v] = parents_[v].size();
    std::set<NodeId> ready;
    for (NodeId v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.insert(v);
    while (!ready.empty()) {
        NodeId v = *ready.begin();
        ready.erase(ready.begin());
        topo_.push_back(v);
        for (NodeId w : children_[v])
            if (--indegree[w] == 0) ready.insert(w);
    }
    if (topo_.size() != n) {
        for (NodeId v = 0; v < n; ++v)
            if (indegree[v] > 0) fail(ErrorCode::Validation, "graph has a directed cycle through \"" + labels_[v] + "\"");
    }
    c_star_ = kleene_star(c_);
}

NodeId WeightedDag::id(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) fail(ErrorCode::InvalidArgument, "unknown node \"" + label + "\"");
    return static_cast<NodeId>(it - labels_.begin());
}

RatVec evaluate(const WeightedDag& model, const RatVec& z) {
    if (z.size() != model.size()) fail(ErrorCode::DimensionMismatch, "evaluate: z has the wrong length");
    for (const auto& v : z)
        if (!v.is_positive()) fail(ErrorCode::NonPositive, "evaluate: innovations must be strictly positive");
    return trop_mul(model.c_star(), z);
}

const char* dag_kind_name(DagKind kind) {
    switch (kind) {
        case DagKind::Reachability: return "reachability";
        case DagKind::ConditionalReachability: return "conditional_reachability";
        case DagKind::Critical: return "critical";
        case DagKind::Source: return "source";
    }
    return "?";
}

DerivedDag reachability_dag(const WeightedDag& model) {
    DerivedDag d{DagKind::Reachability, {}, {}};
    for (NodeId i = 0; i < model.size(); ++i)
        for (NodeId j = 0; j < model.size(); ++j)
            if (model.reaches(j, i)) d.edges.insert({j, i});
    return d;
}

DerivedDag conditional_reach_dag(const WeightedDag& model, const NodeSet& k) {
    DerivedDag d{DagKind::ConditionalReachability, k, {}};
    const std::size_t n = model.size();
    for (NodeId j = 0; j < n; ++j) {
        // Search from j, expanding only through nodes outside K.
        std::vector<bool> seen(n, false);
        std::vector<NodeId> frontier{j};
        while (!frontier.empty()) {
            NodeId v = frontier.back();
            frontier.pop_back();
            for (NodeId w : model.children()[v]) {
                if (seen[w]) continue;
                seen[w] = true;
                if (w != j) d.edges.insert({j, w});
                if (!k.contains(w)) frontier.push_back(w);
            }
        }
    }
    return d;
}

DerivedDag critical_dag(const WeightedDag& model, const NodeSet& k) {
    DerivedDag d{DagKind::Critical, k, {}};
    const std::size_t n = model.size();
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j) {
            if (!model.reaches(j, i)) continue;
            bool critical_through_k = false;
            for (NodeId m : k) {
                if (m == i || m == j) continue;
                if (model.cs(i, m) * model.cs(m, j) == model.cs(i, j)) {
                    critical_through_k = true;
                    break;
                }
            }
            if (!critical_through_k) d.edges.insert({j, i});
        }
    return d;
}

}  // namespace maxlin
