#include "maxlin/separation.hpp"

#include "maxlin/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace maxlin {

const char* shape_name(Shape s) {
    switch (s) {
        case Shape::A: return "A";
        case Shape::B: return "B";
        case Shape::C: return "C";
        case Shape::D: return "D";
        case Shape::E: return "E";
    }
    return "?";
}

const char* ci_mode_name(CIMode m) {
    switch (m) {
        case CIMode::Generic: return "generic";
        case CIMode::FixedC: return "fixed_c";
        case CIMode::FixedC_Complete: return "fixed_c_complete";
        case CIMode::ContextSpecific: return "context";
    }
    return "?";
}

EdgeSet StarPath::edges(const EdgeSet& graph) const {
    EdgeSet out;
    for (std::size_t t = 0; t + 1 < nodes.size(); ++t) {
        Edge fwd{nodes[t], nodes[t + 1]}, back{nodes[t + 1], nodes[t]};
        out.insert(graph.contains(fwd) ? fwd : back);
    }
    return out;
}

std::vector<StarPath> star_connecting_paths(std::size_t n, const EdgeSet& graph, const NodeSet& colliders,
                                            const NodeSet& blocked, const NodeSet& is, const NodeSet& js) {
    std::vector<NodeSet> pa(n), ch(n);
    for (const auto& e : graph) {
        pa[e.to].insert(e.from);
        ch[e.from].insert(e.to);
    }
    auto free_node = [&](NodeId v) { return !blocked.contains(v); };
    std::set<StarPath> found;
    for (NodeId x : is)
        for (NodeId y : js) {
            if (x == y) continue;
            if (graph.contains({x, y}) || graph.contains({y, x})) found.insert({Shape::A, {x, y}, std::nullopt});
            for (NodeId p : pa[x])
                if (free_node(p) && p != y && pa[y].contains(p)) found.insert({Shape::B, {x, p, y}, std::nullopt});
            for (NodeId k : ch[x])
                if (colliders.contains(k) && k != y && ch[y].contains(k)) found.insert({Shape::C, {x, k, y}, k});
            // x <- p -> k <- y
            for (NodeId p : pa[x]) {
                if (!free_node(p) || p == y) continue;
                for (NodeId k : ch[p])
                    if (colliders.contains(k) && k != x && k != y && ch[y].contains(k))
                        found.insert({Shape::D, {x, p, k, y}, k});
            }
            // x -> k <- q -> y
            for (NodeId k : ch[x]) {
                if (!colliders.contains(k) || k == y) continue;
                for (NodeId q : pa[k])
                    if (free_node(q) && q != x && q != y && pa[y].contains(q)) found.insert({Shape::D, {x, k, q, y}, k});
            }
            // x <- p -> k <- q -> y
            for (NodeId p : pa[x]) {
                if (!free_node(p) || p == y) continue;
                for (NodeId k : ch[p]) {
                    if (!colliders.contains(k) || k == x || k == y) continue;
                    for (NodeId q : pa[k])
                        if (free_node(q) && q != p && q != x && q != y && pa[y].contains(q))
                            found.insert({Shape::E, {x, p, k, q, y}, k});
                }
            }
        }
    return {found.begin(), found.end()};
}

std::vector<StarPath> star_connecting_paths(std::size_t n, const EdgeSet& graph, const NodeSet& k, const NodeSet& i,
                                            const NodeSet& j) {
    return star_connecting_paths(n, graph, k, k, i, j);
}

void require_disjoint(const NodeSet& i, const NodeSet& j, const NodeSet& k) {
    auto overlap = [](const NodeSet& a, const NodeSet& b) {
        return std::any_of(a.begin(), a.end(), [&](NodeId v) { return b.contains(v); });
    };
    if (overlap(i, j) || overlap(i, k) || overlap(j, k))
        fail(ErrorCode::OverlappingSets, "the sets I, J and K must be pairwise disjoint");
}

bool d_separated(const WeightedDag& model, const NodeSet& is, const NodeSet& js, const NodeSet& k) {
    require_disjoint(is, js, k);
    const std::size_t n = model.size();
    // Moralized ancestral graph of I u J u K, with K removed.
    std::vector<bool> keep(n, false);
    std::vector<NodeId> stack;
    for (const NodeSet* s : {&is, &js, &k})
        for (NodeId v : *s)
            if (!keep[v]) {
                keep[v] = true;
                stack.push_back(v);
            }
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId p : model.parents()[v])
            if (!keep[p]) {
                keep[p] = true;
                stack.push_back(p);
            }
    }
    std::vector<NodeSet> adj(n);
    for (NodeId v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        const auto& pa = model.parents()[v];
        for (NodeId p : pa) {
            adj[v].insert(p);
            adj[p].insert(v);
            for (NodeId q : pa)
                if (q != p) adj[p].insert(q);
        }
    }
    std::vector<bool> seen(n, false);
    for (NodeId v : is) {
        seen[v] = true;
        stack.push_back(v);
    }
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (js.contains(v)) return false;
        for (NodeId w : adj[v])
            if (!seen[w] && !k.contains(w)) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return true;
}

namespace {

bool critical_avoids(const WeightedDag& model, NodeId j, NodeId i, const NodeSet& k) {
    if (!model.reaches(j, i)) return false;
    for (NodeId m : k) {
        if (m == i || m == j) continue;
        if (model.cs(i, m) * model.cs(m, j) == model.cs(i, j)) return false;
    }
    return true;
}

Edge orient(const WeightedDag& model, NodeId u, NodeId v) { return model.reaches(u, v) ? Edge{u, v} : Edge{v, u}; }

TropMatrix gamma_kk(const WeightedDag& model, const std::vector<NodeId>& ks) {
    TropMatrix g(ks.size());
    for (std::size_t a = 0; a < ks.size(); ++a)
        for (std::size_t b = 0; b < ks.size(); ++b)
            if (a != b) g(a, b) = model.cs(ks[a], ks[b]);
    return g;
}

}  // namespace

TropMatrix substitution_matrix(const WeightedDag& model, const NodeSet& k, const Edge& e) {
    const NodeId j = e.from, i = e.to;
    if (!critical_avoids(model, j, i, k))
        fail(ErrorCode::EdgeNotCritical,
             "edge " + model.label(j) + "->" + model.label(i) + " is not in the critical DAG for the conditioning set");
    std::vector<NodeId> ks(k.begin(), k.end());
    TropMatrix xi(ks.size());
    for (std::size_t a = 0; a < ks.size(); ++a) {
        const NodeId kk = ks[a];
        if (!model.reaches(j, kk)) continue;
        for (std::size_t b = 0; b < ks.size(); ++b) {
            const NodeId l = ks[b];
            if (l == kk || !(l == i || model.reaches(l, i))) continue;
            xi(a, b) = model.cs(kk, j) * model.cs(i, l) / model.cs(i, j);
        }
    }
    return xi;
}

TropMatrix substitution_matrix(const WeightedDag& model, const NodeSet& k, const StarPath& path) {
    TropMatrix out(k.size());
    for (std::size_t t = 0; t + 1 < path.nodes.size(); ++t)
        out = trop_max(out, substitution_matrix(model, k, orient(model, path.nodes[t], path.nodes[t + 1])));
    return out;
}

PathEffectiveness path_effective(const WeightedDag& model, const NodeSet& k, const StarPath& path) {
    PathEffectiveness out;
    std::vector<NodeId> ks(k.begin(), k.end());
    out.matrix = trop_max(gamma_kk(model, ks), substitution_matrix(model, k, path));
    out.comparison = cycle_compare_one(out.matrix);
    for (auto& v : out.comparison.witness) v = ks[v];
    out.effective = out.comparison.order == Ordering::LT;
    return out;
}

std::vector<WeightedEdge> witness_coefficients(const WeightedDag& model, const NodeSet& k, const StarPath& path) {
    const std::size_t n = model.size();
    EdgeSet unit;
    for (std::size_t t = 0; t + 1 < path.nodes.size(); ++t) {
        Edge e = orient(model, path.nodes[t], path.nodes[t + 1]);
        // Breadth-first search from e.from to e.to through nodes outside K.
        std::vector<std::optional<NodeId>> prev(n);
        std::vector<bool> seen(n, false);
        std::deque<NodeId> queue{e.from};
        seen[e.from] = true;
        while (!queue.empty() && !seen[e.to]) {
            NodeId v = queue.front();
            queue.pop_front();
            for (NodeId w : model.children()[v]) {
                if (seen[w]) continue;
                if (w != e.to && k.contains(w)) continue;
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
        if (!seen[e.to])
            fail(ErrorCode::InvalidArgument,
                 "no directed path avoiding K realizes " + model.label(e.from) + "->" + model.label(e.to));
        for (NodeId v = e.to; v != e.from; v = *prev[v]) unit.insert({*prev[v], v});
    }
    std::vector<WeightedEdge> out;
    for (const auto& e : model.edges()) out.push_back({e.from, e.to, unit.contains(e) ? Rational(1) : Rational(1, 2)});
    return out;
}

CIVerdict ci_generic(const WeightedDag& model, const NodeSet& i, const NodeSet& j, const NodeSet& k) {
    require_disjoint(i, j, k);
    CIVerdict v;
    v.mode = CIMode::Generic;
    auto paths = star_connecting_paths(model.size(), conditional_reach_dag(model, k).edges, k, i, j);
    v.paths_examined = paths.size();
    if (paths.empty()) return v;
    v.independent = false;
    v.witness = paths.front();
    v.witness_coefficients = witness_coefficients(model, k, paths.front());
    return v;
}

CIVerdict ci_fixed_c(const WeightedDag& model, const NodeSet& i, const NodeSet& j, const NodeSet& k) {
    require_disjoint(i, j, k);
    CIVerdict v;
    v.mode = CIMode::FixedC;
    auto paths = star_connecting_paths(model.size(), critical_dag(model, k).edges, k, i, j);
    v.paths_examined = paths.size();
    if (paths.empty()) return v;
    v.independent = false;
    v.witness = paths.front();
    return v;
}

CIVerdict ci_fixed_c_complete(const WeightedDag& model, const NodeSet& i, const NodeSet& j, const NodeSet& k) {
    require_disjoint(i, j, k);
    CIVerdict v;
    v.mode = CIMode::FixedC_Complete;
    auto paths = star_connecting_paths(model.size(), critical_dag(model, k).edges, k, i, j);
    v.paths_examined = paths.size();
    for (const auto& p : paths) {
        PathEffectiveness eff = path_effective(model, k, p);
        if (!eff.effective) continue;
        v.independent = false;
        v.witness = p;
        v.witness_matrix = eff.matrix;
        v.witness_order = eff.comparison.order;
        return v;
    }
    return v;
}

CIVerdict ci_context(const WeightedDag& model, const ContextAnalysis& analysis, const NodeSet& i, const NodeSet& j) {
    const NodeSet k = analysis.ctx.k();
    require_disjoint(i, j, k);
    CIVerdict v;
    v.mode = CIMode::ContextSpecific;
    const Partition& part = analysis.partition;
    // Constant nodes are independent of everything.
    NodeSet ia, ja;
    for (NodeId x : i)
        if (part.a.contains(x)) ia.insert(x);
    for (NodeId y : j)
        if (part.a.contains(y)) ja.insert(y);
    NodeSet colliders = part.h;
    for (NodeId l : part.l()) colliders.insert(l);
    auto paths = star_connecting_paths(model.size(), analysis.source.edges, colliders, part.k_star, ia, ja);
    v.paths_examined = paths.size();
    if (paths.empty()) return v;
    v.independent = false;
    v.witness = paths.front();
    return v;
}

}  // namespace maxlin
