#pragma once

#include "maxlin/context.hpp"
#include "maxlin/distributions.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace maxlin {

using Term = std::pair<NodeId, Rational>;  ///< coefficient * Z_node

/// constant v max_j (a_j Z_j)
struct MaxLinearExpr {
    Rational constant;
    std::vector<Term> terms;
};

/// X_a for unobserved a in terms of x_K and Z, plus the constraints x_k = (C* Z)_k.
struct BasicRepresentation {
    std::map<NodeId, MaxLinearExpr> x;
    std::map<NodeId, MaxLinearExpr> constraints;
};

BasicRepresentation basic_representation(const WeightedDag& model, const ContextAnalysis& analysis);

/// value = max over terms; one per H node and one per L-block.
struct Equation {
    NodeId anchor;
    bool from_h = false;
    Rational value;
    std::vector<Term> terms;
};

struct CondRepresentation {
    std::size_t n = 0;
    NodeSet active;
    std::map<NodeId, Rational> constants;  ///< values of K*
    std::map<NodeId, Rational> alpha;      ///< alpha_a for a in A
    std::vector<std::optional<Rational>> bounds;
    std::vector<bool> bound_needed;  ///< bounds on Z_{A u H}
    std::vector<Equation> equations;
    std::map<NodeId, std::vector<Term>> x_terms;  ///< source-DAG parents of each active node
    std::vector<std::string> notes;
};

CondRepresentation build_representation(const WeightedDag& model, const ContextAnalysis& analysis);

/// Variables grouped by shared equations; singletons otherwise. Sorted.
std::vector<NodeSet> z_dependency_blocks(const CondRepresentation& rep);

std::set<Rational> atoms_of(const WeightedDag& model, const ContextAnalysis& analysis, NodeId a);

struct SampleSet {
    std::size_t n = 0;
    std::size_t width = 0;
    std::vector<double> z;  ///< row-major n x width
    std::vector<double> x;
    std::vector<std::size_t> achiever;  ///< row-major n x equations: index of the achieving term

    double z_at(std::size_t row, NodeId v) const { return z[row * width + v]; }
    double x_at(std::size_t row, NodeId v) const { return x[row * width + v]; }
};

SampleSet conditional_sampler(const CondRepresentation& rep, const InnovationDist& dist, std::size_t n, std::uint64_t seed);

}  // namespace maxlin
