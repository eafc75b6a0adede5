#pragma once

#include "maxlin/network.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace maxlin {

/// A forest of stars, stored as a parent map.
class Galaxy {
public:
    Galaxy() = default;
    explicit Galaxy(std::size_t n) : parent_(n) {}
    Galaxy(std::size_t n, const EdgeSet& edges);

    std::size_t size() const { return parent_.size(); }
    const std::optional<NodeId>& parent(NodeId i) const { return parent_.at(i); }
    void set_parent(NodeId i, std::optional<NodeId> p) { parent_.at(i) = p; }

    bool is_root(NodeId i) const { return !parent_.at(i).has_value(); }
    /// R_g(i): the star root feeding i.
    NodeId root_of(NodeId i) const { return parent_.at(i).value_or(i); }
    std::vector<NodeId> roots() const;
    NodeSet children(NodeId r) const;
    EdgeSet edges() const;
    bool contains(const Edge& e) const { return parent_.at(e.to) == e.from; }

    friend bool operator==(const Galaxy&, const Galaxy&) = default;
    friend bool operator<(const Galaxy& a, const Galaxy& b);

private:
    std::vector<std::optional<NodeId>> parent_;
};

using GalaxySet = std::set<Galaxy>;

/// Which innovation realizes each node. Throws TieDetected on ties.
Galaxy realized_impact_graph(const WeightedDag& model, const RatVec& z);

struct ImpactExchange {
    std::vector<NodeId> roots;
    TropMatrix m;
};

ImpactExchange impact_exchange(const WeightedDag& model, const Galaxy& g);

struct ImpactVerdict {
    bool valid = true;
    /// 'a' subgraph of D*, 'b' forest of stars, 'c' triangle condition, 'd' exchange eigenvalue.
    char condition = 0;
    /// (j, i, k) for (c); (j, i) for (a) and (b); the cycle over roots for (d).
    std::vector<NodeId> witness;
    Rational cycle_product;
    std::string message;
};

ImpactVerdict is_impact_graph(const WeightedDag& model, const Galaxy& g);

struct EnumerationOptions {
    std::size_t guard = 14;
};

/// All impact graphs of the model, canonically ordered. Throws TooLarge beyond the guard.
GalaxySet enumerate_impact_graphs(const WeightedDag& model, const EnumerationOptions& opts = {});

struct RestrictedStar {
    TropMatrix matrix;  ///< C*_g
    std::size_t rank = 0;
};

RestrictedStar restricted_kleene(const WeightedDag& model, const Galaxy& g);

std::string galaxy_to_string(const WeightedDag& model, const Galaxy& g);

}  // namespace maxlin
