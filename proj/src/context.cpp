#include "maxlin/context.hpp"

#include "maxlin/errors.hpp"
#include "maxlin/feasibility.hpp"

#include <algorithm>
#include <limits>

namespace maxlin {

NodeSet Context::k() const {
    NodeSet out;
    for (const auto& [v, _] : observed) out.insert(v);
    return out;
}

NodeSet Partition::l() const {
    NodeSet out;
    for (const auto& b : l_blocks) out.insert(b.begin(), b.end());
    return out;
}

std::vector<NodeSet> ContextAnalysis::source_parents() const {
    std::vector<NodeSet> pa(n);
    for (const auto& e : source.edges) pa[e.to].insert(e.from);
    return pa;
}

Context make_context(const WeightedDag& model, std::map<NodeId, Rational> observed) {
    for (const auto& [v, x] : observed) {
        if (v >= model.size()) fail(ErrorCode::InvalidArgument, "context references an unknown node");
        if (!x.is_positive()) fail(ErrorCode::NonPositive, "observed value of \"" + model.label(v) + "\" must be positive");
    }
    return Context{std::move(observed)};
}

bool region_feasible(const WeightedDag& model, const Galaxy& g, const Context& ctx) {
    const std::size_t n = model.size();
    RatioSystem sys(n);
    auto var = [](NodeId v) { return v + 1; };
    for (NodeId i = 0; i < n; ++i) {
        NodeId r = g.root_of(i);
        if (model.cs(i, r).is_zero()) return false;
        for (NodeId j = 0; j < n; ++j) {
            if (j == r || model.cs(i, j).is_zero()) continue;
            // c*_ir z_r > c*_ij z_j
            sys.upper(var(j), var(r), model.cs(i, r) / model.cs(i, j), true);
        }
    }
    for (const auto& [k, x] : ctx.observed) {
        NodeId r = g.root_of(k);
        sys.pin(var(r), x / model.cs(k, r));
    }
    return sys.feasible();
}

std::size_t projection_rank(const Galaxy& g, const Context& ctx) {
    NodeSet roots;
    for (const auto& [k, _] : ctx.observed) roots.insert(g.root_of(k));
    return roots.size();
}

namespace {

/// x_k >= c*_kh x_h for all observed h, k.
bool consistent_observations(const WeightedDag& model, const Context& ctx) {
    for (const auto& [k, xk] : ctx.observed)
        for (const auto& [h, xh] : ctx.observed)
            if (h != k && xk < model.cs(k, h) * xh) return false;
    return true;
}

}  // namespace

CompatibleSet compatible_impact_graphs(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts) {
    CompatibleSet out;
    if (!consistent_observations(model, ctx)) return out;
    GalaxySet all = enumerate_impact_graphs(model, opts);
    std::vector<std::pair<Galaxy, std::size_t>> feasible;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& g : all) {
        if (!region_feasible(model, g, ctx)) continue;
        std::size_t rank = projection_rank(g, ctx);
        best = std::min(best, rank);
        feasible.emplace_back(g, rank);
    }
    if (feasible.empty()) return out;
    out.min_rank = best;
    for (auto& [g, rank] : feasible) (rank == best ? out.galaxies : out.rejected_feasible).push_back(std::move(g));
    return out;
}

namespace {

std::map<NodeId, Rational> pinned_stars(const WeightedDag& model, const Galaxy& g, const Context& ctx) {
    std::map<NodeId, Rational> values;
    for (const auto& [k, x] : ctx.observed) {
        NodeId r = g.root_of(k);
        if (values.contains(r)) continue;
        Rational zr = x / model.cs(k, r);
        values[r] = zr;
        for (NodeId c : g.children(r)) values[c] = model.cs(c, r) * zr;
    }
    return values;
}

ConstantNodes constants_from(const WeightedDag& model, const Context& ctx, const CompatibleSet& compatible) {
    ConstantNodes out;
    for (const auto& g : compatible.galaxies) out.per_graph.push_back(pinned_stars(model, g, ctx));
    if (out.per_graph.empty()) return out;
    for (const auto& [v, value] : out.per_graph.front()) {
        bool everywhere = true, same = true;
        for (const auto& m : out.per_graph) {
            auto it = m.find(v);
            if (it == m.end()) {
                everywhere = false;
                break;
            }
            if (it->second != value) same = false;
        }
        if (!everywhere) continue;
        if (!same) {
            out.warnings.push_back("node \"" + model.label(v) +
                                   "\" is pinned by every compatible impact graph but to different values; treated as active");
            continue;
        }
        out.k_star.insert(v);
        out.values[v] = value;
    }
    return out;
}

SourceDag source_from(const WeightedDag& model, const CompatibleSet& compatible, const ConstantNodes& constants) {
    SourceDag out;
    for (const auto& g : compatible.galaxies)
        for (const auto& e : g.edges()) out.total_impact.insert(e);
    for (const auto& e : out.total_impact) {
        bool redundant = constants.k_star.contains(e.from);
        if (!redundant && !constants.k_star.contains(e.to)) {
            redundant = true;
            for (std::size_t t = 0; t < compatible.galaxies.size() && redundant; ++t)
                if (compatible.galaxies[t].contains(e) && !constants.per_graph[t].contains(e.from)) redundant = false;
        }
        (redundant ? out.removed : out.edges).insert(e);
    }
    (void)model;
    return out;
}

Partition partition_from(const WeightedDag& model, const CompatibleSet& compatible, const ConstantNodes& constants,
                         const SourceDag& source) {
    Partition p;
    p.k_star = constants.k_star;
    p.constant_values = constants.values;
    for (NodeId v = 0; v < model.size(); ++v)
        if (!p.k_star.contains(v)) p.a.insert(v);
    for (NodeId u : p.k_star)
        for (NodeId k : p.k_star) {
            if (k == u || model.cs(u, k).is_zero()) continue;
            if (constants.values.at(u) == model.cs(u, k) * constants.values.at(k)) {
                p.u.insert(u);
                break;
            }
        }
    std::vector<NodeSet> pa(model.size());
    for (const auto& e : source.edges) pa[e.to].insert(e.from);
    std::map<NodeSet, NodeSet> blocks;
    for (NodeId v : p.k_star) {
        if (p.u.contains(v)) continue;
        bool root_somewhere = std::any_of(compatible.galaxies.begin(), compatible.galaxies.end(),
                                          [v](const Galaxy& g) { return g.is_root(v); });
        if (root_somewhere)
            p.h.insert(v);
        else
            blocks[pa[v]].insert(v);
    }
    for (auto& [_, members] : blocks) p.l_blocks.push_back(members);
    std::sort(p.l_blocks.begin(), p.l_blocks.end(), [](const NodeSet& a, const NodeSet& b) { return *a.begin() < *b.begin(); });
    return p;
}

}  // namespace

ContextAnalysis analyze_context(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts) {
    ContextAnalysis out;
    out.n = model.size();
    out.ctx = ctx;
    if (ctx.observed.empty()) {
        // No conditioning: every node is active and the source DAG is D*.
        for (NodeId v = 0; v < model.size(); ++v) out.partition.a.insert(v);
        out.source.edges = reachability_dag(model).edges;
        out.source.total_impact = out.source.edges;
        return out;
    }
    out.compatible = compatible_impact_graphs(model, ctx, opts);
    if (!out.compatible.possible())
        fail(ErrorCode::ImpossibleContext, "no impact graph is compatible with the observed values");
    out.constants = constants_from(model, ctx, out.compatible);
    out.source = source_from(model, out.compatible, out.constants);
    out.partition = partition_from(model, out.compatible, out.constants, out.source);
    return out;
}

ConstantNodes constant_nodes(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts) {
    return analyze_context(model, ctx, opts).constants;
}

Partition partition(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts) {
    return analyze_context(model, ctx, opts).partition;
}

SourceDag source_dag(const WeightedDag& model, const Context& ctx, const EnumerationOptions& opts) {
    return analyze_context(model, ctx, opts).source;
}

Completion completion_matrix(const WeightedDag& model, const ContextAnalysis& analysis) {
    Completion out;
    out.c_bar = model.c();
    const auto& values = analysis.partition.constant_values;
    for (const auto& [i, xi] : values)
        for (const auto& [j, xj] : values) out.c_bar(i, j) = xi / xj;
    out.c_bar_star = bounded_closure(out.c_bar);
    return out;
}

namespace {

bool critical_avoiding(const WeightedDag& model, NodeId j, NodeId i, const NodeSet& set) {
    for (NodeId k : set) {
        if (k == i || k == j) continue;
        if (model.cs(i, k) * model.cs(k, j) == model.cs(i, j)) return false;
    }
    return true;
}

}  // namespace

EdgeSet effective_edges_in_context(const WeightedDag& model, const ContextAnalysis& analysis) {
    const NodeSet& ks = analysis.partition.k_star;
    const auto& x = analysis.partition.constant_values;
    EdgeSet out;
    for (const auto& e : critical_dag(model, analysis.ctx.k()).edges) {
        const NodeId j = e.from, i = e.to;
        if (ks.contains(j) || !critical_avoiding(model, j, i, ks)) continue;
        bool ok = true;
        for (NodeId k : ks) {
            if (!model.reaches(j, k)) continue;
            for (NodeId l : ks) {
                if (l == k || !(l == i || model.reaches(l, i))) continue;
                // xi_kl x_l < x_k with xi_kl = c*_kj c*_il / c*_ij
                if (!(model.cs(k, j) * model.cs(i, l) * x.at(l) < x.at(k) * model.cs(i, j))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) out.insert(e);
    }
    return out;
}

EdgeSet effective_edges_by_completion(const WeightedDag& model, const ContextAnalysis& analysis) {
    const NodeSet& ks = analysis.partition.k_star;
    Completion comp = completion_matrix(model, analysis);
    EdgeSet out;
    for (const auto& e : critical_dag(model, analysis.ctx.k()).edges) {
        const NodeId j = e.from, i = e.to;
        if (ks.contains(j) || !critical_avoiding(model, j, i, ks)) continue;
        if (comp.c_bar_star(i, j) == model.cs(i, j)) out.insert(e);
    }
    return out;
}

}  // namespace maxlin
