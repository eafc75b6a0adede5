#pragma once

#include "maxlin/impact.hpp"

#include <map>
#include <string>
#include <vector>

namespace maxlin {

/// Observation X_K = x_K.
struct Context {
    std::map<NodeId, Rational> observed;

    NodeSet k() const;
    const Rational& x(NodeId v) const { return observed.at(v); }
};

/// Validates ids and positivity; does not decide possibility.
Context make_context(const WeightedDag& model, std::map<NodeId, Rational> observed);

/// Is the realization region of g compatible with the pinned values x_K?
bool region_feasible(const WeightedDag& model, const Galaxy& g, const Context& ctx);

/// Number of distinct star roots hit by K: the rank of the K-projection of C*_g.
std::size_t projection_rank(const Galaxy& g, const Context& ctx);

struct CompatibleSet {
    std::vector<Galaxy> galaxies;           ///< canonical order
    std::size_t min_rank = 0;
    std::vector<Galaxy> rejected_feasible;  ///< feasible but of larger rank
    bool possible() const { return !galaxies.empty(); }
};

CompatibleSet compatible_impact_graphs(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts = {});

struct ConstantNodes {
    NodeSet k_star;
    std::map<NodeId, Rational> values;
    /// Per compatible galaxy: the stars meeting K, with each node's pinned value.
    std::vector<std::map<NodeId, Rational>> per_graph;
    std::vector<std::string> warnings;
};

struct Partition {
    NodeSet a, h, u;
    std::vector<NodeSet> l_blocks;
    NodeSet k_star;
    std::map<NodeId, Rational> constant_values;

    NodeSet l() const;
};

struct SourceDag {
    EdgeSet edges;
    EdgeSet removed;
    EdgeSet total_impact;
};

/// Everything derived from one possible context.
struct ContextAnalysis {
    std::size_t n = 0;
    Context ctx;
    CompatibleSet compatible;
    ConstantNodes constants;
    SourceDag source;
    Partition partition;

    std::vector<NodeSet> source_parents() const;
};

/// Throws ImpossibleContext when no impact graph is compatible.
ContextAnalysis analyze_context(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts = {});

ConstantNodes constant_nodes(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts = {});
Partition partition(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts = {});
SourceDag source_dag(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts = {});

struct Completion {
    TropMatrix c_bar;
    TropMatrix c_bar_star;
};

Completion completion_matrix(const WeightedDag& model, const ContextAnalysis& analysis);

/// Effective edges through the substitution-matrix inequalities.
EdgeSet effective_edges_in_context(const WeightedDag& model, const ContextAnalysis& analysis);

/// Effective edges straight from the definition: c*_ij equals the completed closure entry.
EdgeSet effective_edges_by_completion(const WeightedDag& model, const ContextAnalysis& analysis);

}  // namespace maxlin
