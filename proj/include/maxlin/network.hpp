#pragma once

#include "maxlin/trop.hpp"

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace maxlin {

using NodeId = std::size_t;
using NodeSet = std::set<NodeId>;

struct Edge {
    NodeId from;
    NodeId to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};
using EdgeSet = std::set<Edge>;

struct WeightedEdge {
    NodeId from;
    NodeId to;
    Rational weight;
};

/// Max-linear model on a DAG: X_i = max_j c_ij X_j v Z_i.
/// Node ids follow declaration order; the topological order is cached separately.
class WeightedDag {
public:
    WeightedDag(std::vector<std::string> labels, const std::vector<WeightedEdge>& edges);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(NodeId v) const { return labels_.at(v); }
    /// Throws InvalidArgument for unknown labels.
    NodeId id(const std::string& label) const;

    const EdgeSet& edges() const { return edges_; }
    const std::vector<NodeId>& topological_order() const { return topo_; }
    const std::vector<NodeSet>& parents() const { return parents_; }
    const std::vector<NodeSet>& children() const { return children_; }

    const TropMatrix& c() const { return c_; }
    const TropMatrix& c_star() const { return c_star_; }
    /// c*_ij: heaviest path weight from j to i (1 on the diagonal).
    const Rational& cs(NodeId i, NodeId j) const { return c_star_(i, j); }
    /// j is a strict ancestor of i.
    bool reaches(NodeId j, NodeId i) const { return i != j && !c_star_(i, j).is_zero(); }

private:
    std::vector<std::string> labels_;
    EdgeSet edges_;
    std::vector<NodeSet> parents_;
    std::vector<NodeSet> children_;
    std::vector<NodeId> topo_;
    TropMatrix c_;
    TropMatrix c_star_;
};

/// x = C* (.) z.
RatVec evaluate(const WeightedDag& model, const RatVec& z);

enum class DagKind { Reachability, ConditionalReachability, Critical, Source };
const char* dag_kind_name(DagKind kind);

struct DerivedDag {
    DagKind kind = DagKind::Reachability;
    NodeSet conditioned;
    EdgeSet edges;
};

DerivedDag reachability_dag(const WeightedDag& model);
/// j -> i iff some directed path from j to i has no interior node in K.
DerivedDag conditional_reach_dag(const WeightedDag& model, const NodeSet& k);
/// j -> i iff c*_ij > 0 and c*_ik c*_kj < c*_ij for every k in K \ {i, j}.
DerivedDag critical_dag(const WeightedDag& model, const NodeSet& k);

}  // namespace maxlin
