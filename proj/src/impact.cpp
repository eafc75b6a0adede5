#include "maxlin/impact.hpp"

#include "maxlin/errors.hpp"

#include <sstream>

namespace maxlin {

Galaxy::Galaxy(std::size_t n, const EdgeSet& edges) : parent_(n) {
    for (const auto& e : edges) {
        if (e.to >= n || e.from >= n) fail(ErrorCode::InvalidArgument, "galaxy edge out of range");
        if (parent_[e.to]) fail(ErrorCode::InvalidArgument, "galaxy node with two parents");
        parent_[e.to] = e.from;
    }
}

std::vector<NodeId> Galaxy::roots() const {
    std::vector<NodeId> r;
    for (NodeId i = 0; i < parent_.size(); ++i)
        if (!parent_[i]) r.push_back(i);
    return r;
}

NodeSet Galaxy::children(NodeId r) const {
    NodeSet out;
    for (NodeId i = 0; i < parent_.size(); ++i)
        if (parent_[i] == r) out.insert(i);
    return out;
}

EdgeSet Galaxy::edges() const {
    EdgeSet out;
    for (NodeId i = 0; i < parent_.size(); ++i)
        if (parent_[i]) out.insert({*parent_[i], i});
    return out;
}

bool operator<(const Galaxy& a, const Galaxy& b) {
    if (a.parent_.size() != b.parent_.size()) return a.parent_.size() < b.parent_.size();
    for (std::size_t i = 0; i < a.parent_.size(); ++i) {
        if (a.parent_[i] == b.parent_[i]) continue;
        return a.parent_[i] < b.parent_[i];  // an absent parent sorts first
    }
    return false;
}

Galaxy realized_impact_graph(const WeightedDag& model, const RatVec& z) {
    const std::size_t n = model.size();
    if (z.size() != n) fail(ErrorCode::DimensionMismatch, "realized_impact_graph: z has the wrong length");
    for (const auto& v : z)
        if (!v.is_positive()) fail(ErrorCode::NonPositive, "realized_impact_graph: z must be strictly positive");
    Galaxy g(n);
    for (NodeId i = 0; i < n; ++i) {
        Rational best;
        NodeId arg = i;
        std::size_t hits = 0;
        for (NodeId j = 0; j < n; ++j) {
            if (model.cs(i, j).is_zero()) continue;
            Rational term = model.cs(i, j) * z[j];
            if (best < term) {
                best = term;
                arg = j;
                hits = 1;
            } else if (term == best) {
                ++hits;
            }
        }
        if (hits > 1) fail(ErrorCode::TieDetected, "tie in the maximum at node \"" + model.label(i) + "\"");
        if (arg != i) g.set_parent(i, arg);
    }
    return g;
}

ImpactExchange impact_exchange(const WeightedDag& model, const Galaxy& g) {
    ImpactExchange out;
    out.roots = g.roots();
    const std::size_t r = out.roots.size();
    out.m = TropMatrix(r);
    for (std::size_t a = 0; a < r; ++a) {
        NodeSet kids = g.children(out.roots[a]);
        for (std::size_t b = 0; b < r; ++b) {
            if (a == b) continue;
            Rational best;
            for (NodeId i : kids) {
                Rational ratio = model.cs(i, out.roots[b]) / model.cs(i, out.roots[a]);
                if (best < ratio) best = ratio;
            }
            out.m(a, b) = best;
        }
    }
    return out;
}

namespace {

/// First (j, i, k) with j -> i in g, c*_ij = c*_ik c*_kj and j -> k missing.
std::optional<std::vector<NodeId>> triangle_violation(const WeightedDag& model, const Galaxy& g) {
    const std::size_t n = model.size();
    for (NodeId i = 0; i < n; ++i) {
        if (!g.parent(i)) continue;
        NodeId j = *g.parent(i);
        for (NodeId k = 0; k < n; ++k) {
            if (k == i || k == j || model.cs(i, k).is_zero() || model.cs(k, j).is_zero()) continue;
            if (model.cs(i, k) * model.cs(k, j) != model.cs(i, j)) continue;
            if (g.parent(k) != j) return std::vector<NodeId>{j, i, k};
        }
    }
    return std::nullopt;
}

}  // namespace

ImpactVerdict is_impact_graph(const WeightedDag& model, const Galaxy& g) {
    ImpactVerdict v;
    if (g.size() != model.size()) fail(ErrorCode::DimensionMismatch, "is_impact_graph: galaxy size mismatch");
    const std::size_t n = model.size();
    for (NodeId i = 0; i < n; ++i) {
        if (!g.parent(i)) continue;
        NodeId j = *g.parent(i);
        if (!model.reaches(j, i)) {
            v = {false, 'a', {j, i}, {}, "edge " + model.label(j) + "->" + model.label(i) + " is not in the reachability DAG"};
            return v;
        }
    }
    for (NodeId i = 0; i < n; ++i) {
        if (!g.parent(i)) continue;
        NodeId j = *g.parent(i);
        if (g.parent(j)) {
            v = {false, 'b', {j, i}, {}, "node " + model.label(j) + " has both a parent and a child"};
            return v;
        }
    }
    if (auto t = triangle_violation(model, g)) {
        const auto& w = *t;
        v = {false, 'c', w, {},
             "triangle condition fails for " + model.label(w[0]) + "->" + model.label(w[1]) + " via " + model.label(w[2])};
        return v;
    }
    ImpactExchange ex = impact_exchange(model, g);
    CycleComparison cmp = cycle_compare_one(ex.m);
    if (cmp.order != Ordering::LT) {
        v.valid = false;
        v.condition = 'd';
        for (auto idx : cmp.witness) v.witness.push_back(ex.roots[idx]);
        v.cycle_product = cmp.witness_product;
        v.message = "impact exchange matrix has a cycle of product " + cmp.witness_product.str();
        return v;
    }
    return v;
}

GalaxySet enumerate_impact_graphs(const WeightedDag& model, const EnumerationOptions& opts) {
    const std::size_t n = model.size();
    if (n > opts.guard)
        fail(ErrorCode::TooLarge, "enumeration guard exceeded: " + std::to_string(n) + " nodes > " +
                                      std::to_string(opts.guard) + " (raise MAXLIN_GUARD)");
    std::vector<std::vector<NodeId>> candidates(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (model.reaches(j, i)) candidates[i].push_back(j);

    GalaxySet out;
    Galaxy g(n);
    std::vector<std::size_t> child_count(n, 0);
    std::vector<bool> assigned(n, false);

    // Parents are chosen in node order; a node with a child keeps no parent and vice versa.
    auto recurse = [&](auto&& self, NodeId i) -> void {
        if (i == n) {
            if (is_impact_graph(model, g).valid) out.insert(g);
            return;
        }
        g.set_parent(i, std::nullopt);
        assigned[i] = true;
        self(self, i + 1);
        if (child_count[i] == 0) {
            for (NodeId r : candidates[i]) {
                if (assigned[r] && g.parent(r)) continue;
                // Triangle condition against already assigned intermediates.
                bool ok = true;
                for (NodeId k = 0; k < i && ok; ++k) {
                    if (k == r || model.cs(i, k).is_zero() || model.cs(k, r).is_zero()) continue;
                    if (model.cs(i, k) * model.cs(k, r) == model.cs(i, r) && g.parent(k) != r) ok = false;
                }
                if (!ok) continue;
                g.set_parent(i, r);
                ++child_count[r];
                self(self, i + 1);
                --child_count[r];
            }
        }
        g.set_parent(i, std::nullopt);
        assigned[i] = false;
    };
    recurse(recurse, 0);
    return out;
}

RestrictedStar restricted_kleene(const WeightedDag& model, const Galaxy& g) {
    const std::size_t n = model.size();
    RestrictedStar out{TropMatrix(n), 0};
    for (NodeId i = 0; i < n; ++i) {
        NodeId r = g.root_of(i);
        out.matrix(i, r) = model.cs(i, r);
    }
    out.rank = g.roots().size();
    return out;
}

std::string galaxy_to_string(const WeightedDag& model, const Galaxy& g) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& e : g.edges()) {
        os << (first ? "" : ", ") << model.label(e.from) << "->" << model.label(e.to);
        first = false;
    }
    os << "}";
    return os.str();
}

}  // namespace maxlin
