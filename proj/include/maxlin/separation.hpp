#pragma once

#include "maxlin/context.hpp"

#include <optional>
#include <string>
#include <vector>

namespace maxlin {

/// The five short connecting shapes, written from the I end to the J end:
/// A  x - y (one edge, either direction)
/// B  x <- p -> y
/// C  x -> k <- y
/// D  x <- p -> k <- y   or   x -> k <- q -> y
/// E  x <- p -> k <- q -> y
enum class Shape { A, B, C, D, E };
const char* shape_name(Shape s);

struct StarPath {
    Shape shape;
    std::vector<NodeId> nodes;
    std::optional<NodeId> collider;

    /// Edges of the path as directed in the graph.
    EdgeSet edges(const EdgeSet& graph) const;
    friend auto operator<=>(const StarPath&, const StarPath&) = default;
};

/// All star paths between I and J in `graph`. Colliders must lie in `colliders`;
/// other interior nodes must avoid `blocked`. Sorted and deduplicated.
std::vector<StarPath> star_connecting_paths(std::size_t n, const EdgeSet& graph, const NodeSet& colliders,
                                            const NodeSet& blocked, const NodeSet& i, const NodeSet& j);

/// Colliders and blocked nodes both equal K.
std::vector<StarPath> star_connecting_paths(std::size_t n, const EdgeSet& graph, const NodeSet& k, const NodeSet& i,
                                            const NodeSet& j);

bool d_separated(const WeightedDag& model, const NodeSet& i, const NodeSet& j, const NodeSet& k);

enum class CIMode { Generic, FixedC, FixedC_Complete, ContextSpecific };
const char* ci_mode_name(CIMode m);

struct CIVerdict {
    bool independent = true;
    CIMode mode = CIMode::Generic;
    std::optional<StarPath> witness;
    /// Generic mode: coefficients under which dependence holds.
    std::optional<std::vector<WeightedEdge>> witness_coefficients;
    /// Effective mode: Gamma_KK v Xi over the sorted K.
    std::optional<TropMatrix> witness_matrix;
    std::optional<Ordering> witness_order;
    std::size_t paths_examined = 0;
};

/// Throws OverlappingSets unless I, J, K are pairwise disjoint.
void require_disjoint(const NodeSet& i, const NodeSet& j, const NodeSet& k);

CIVerdict ci_generic(const WeightedDag& model, const NodeSet& i, const NodeSet& j, const NodeSet& k);
CIVerdict ci_fixed_c(const WeightedDag& model, const NodeSet& i, const NodeSet& j, const NodeSet& k);
CIVerdict ci_fixed_c_complete(const WeightedDag& model, const NodeSet& i, const NodeSet& j, const NodeSet& k);
CIVerdict ci_context(const WeightedDag& model, const ContextAnalysis& analysis, const NodeSet& i, const NodeSet& j);

/// Xi^{ij}_K for the edge j -> i, indexed by sorted K. Throws EdgeNotCritical.
TropMatrix substitution_matrix(const WeightedDag& model, const NodeSet& k, const Edge& e);
/// Entrywise maximum over the edges of the path.
TropMatrix substitution_matrix(const WeightedDag& model, const NodeSet& k, const StarPath& path);

struct PathEffectiveness {
    bool effective = false;
    TropMatrix matrix;  ///< Gamma_KK v Xi
    CycleComparison comparison;
};

PathEffectiveness path_effective(const WeightedDag& model, const NodeSet& k, const StarPath& path);

/// Coefficients that are 1 on directed paths realizing each edge of `path` while avoiding K, 1/2 elsewhere.
std::vector<WeightedEdge> witness_coefficients(const WeightedDag& model, const NodeSet& k, const StarPath& path);

}  // namespace maxlin
