#include "maxlin/representation.hpp"

#include "maxlin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maxlin {

BasicRepresentation basic_representation(const WeightedDag& model, const ContextAnalysis& analysis) {
    BasicRepresentation out;
    const NodeSet k = analysis.ctx.k();
    const std::size_t n = model.size();
    for (NodeId a = 0; a < n; ++a) {
        if (k.contains(a)) continue;
        MaxLinearExpr e;
        for (NodeId h : k)
            if (!model.cs(a, h).is_zero()) e.constant = tmax(e.constant, model.cs(a, h) * analysis.ctx.x(h));
        for (NodeId j = 0; j < n; ++j)
            if (!k.contains(j) && !model.cs(a, j).is_zero()) e.terms.emplace_back(j, model.cs(a, j));
        out.x[a] = std::move(e);
    }
    for (NodeId h : k) {
        MaxLinearExpr e;
        e.constant = analysis.ctx.x(h);  // the value the maximum must reach
        for (NodeId j = 0; j < n; ++j)
            if (!model.cs(h, j).is_zero()) e.terms.emplace_back(j, model.cs(h, j));
        out.constraints[h] = std::move(e);
    }
    return out;
}

CondRepresentation build_representation(const WeightedDag& model, const ContextAnalysis& analysis) {
    const std::size_t n = model.size();
    const Partition& part = analysis.partition;
    const auto& x = part.constant_values;
    const auto pa = analysis.source_parents();

    CondRepresentation rep;
    rep.n = n;
    rep.active = part.a;
    rep.constants = x;
    rep.bounds.assign(n, std::nullopt);
    rep.bound_needed.assign(n, false);

    for (NodeId i = 0; i < n; ++i) {
        for (NodeId k : part.k_star) {
            if (model.cs(k, i).is_zero()) continue;
            Rational b = x.at(k) / model.cs(k, i);
            if (!rep.bounds[i] || b < *rep.bounds[i]) rep.bounds[i] = b;
        }
        rep.bound_needed[i] = part.a.contains(i) || part.h.contains(i);
    }

    const NodeSet hl = [&] {
        NodeSet s = part.h;
        NodeSet l = part.l();
        s.insert(l.begin(), l.end());
        return s;
    }();

    for (NodeId a : part.a) {
        Rational alpha;
        for (NodeId k : part.k_star)
            if (!model.cs(a, k).is_zero()) alpha = tmax(alpha, model.cs(a, k) * x.at(k));
        for (const auto& e : analysis.source.removed) {
            if (e.to != a || !part.a.contains(e.from)) continue;
            const NodeId j = e.from;
            // Whenever j -> a is realized, j is a constant root feeding some h in H u L.
            bool found = false;
            for (const auto& t : analysis.source.total_impact) {
                if (t.from != j || !hl.contains(t.to)) continue;
                alpha = tmax(alpha, model.cs(a, j) * x.at(t.to) / model.cs(t.to, j));
                found = true;
            }
            if (!found && rep.bounds[j]) alpha = tmax(alpha, model.cs(a, j) * *rep.bounds[j]);
        }
        rep.alpha[a] = alpha;
        std::vector<Term> terms;
        for (NodeId j : pa[a]) terms.emplace_back(j, model.cs(a, j));
        rep.x_terms[a] = std::move(terms);
    }

    auto finish = [&](Equation eq) {
        std::vector<Term> kept;
        for (auto& [j, coef] : eq.terms) {
            Rational level = eq.value / coef;
            if (rep.bounds[j] && *rep.bounds[j] < level) {
                rep.notes.push_back("dropped term " + model.label(j) + " from the equation of " + model.label(eq.anchor) +
                                    ": its bound is below the required level");
                continue;
            }
            kept.emplace_back(j, coef);
        }
        if (kept.empty())
            fail(ErrorCode::DegenerateBlock, "no term can attain the value of " + model.label(eq.anchor));
        eq.terms = std::move(kept);
        rep.equations.push_back(std::move(eq));
    };
    for (NodeId h : part.h) {
        Equation eq{h, true, x.at(h), {{h, Rational(1)}}};
        for (NodeId j : pa[h]) eq.terms.emplace_back(j, model.cs(h, j));
        finish(std::move(eq));
    }
    for (const auto& block : part.l_blocks) {
        NodeId l = *block.begin();
        Equation eq{l, false, x.at(l), {}};
        for (NodeId j : pa[l]) eq.terms.emplace_back(j, model.cs(l, j));
        finish(std::move(eq));
    }
    std::vector<int> owner(n, -1);
    for (std::size_t t = 0; t < rep.equations.size(); ++t)
        for (const auto& [j, _] : rep.equations[t].terms) {
            if (owner[j] >= 0) fail(ErrorCode::DegenerateBlock, "Z_" + model.label(j) + " enters two equations");
            owner[j] = static_cast<int>(t);
        }
    return rep;
}

std::vector<NodeSet> z_dependency_blocks(const CondRepresentation& rep) {
    std::vector<NodeSet> blocks;
    std::vector<bool> used(rep.n, false);
    for (const auto& eq : rep.equations) {
        NodeSet b;
        for (const auto& [j, _] : eq.terms) {
            b.insert(j);
            used[j] = true;
        }
        blocks.push_back(std::move(b));
    }
    for (NodeId v = 0; v < rep.n; ++v)
        if (!used[v]) blocks.push_back({v});
    std::sort(blocks.begin(), blocks.end(), [](const NodeSet& a, const NodeSet& b) { return *a.begin() < *b.begin(); });
    return blocks;
}

std::set<Rational> atoms_of(const WeightedDag& model, const ContextAnalysis& analysis, NodeId a) {
    const Partition& part = analysis.partition;
    if (!part.a.contains(a)) fail(ErrorCode::InvalidArgument, "atoms_of: node \"" + model.label(a) + "\" is not active");
    CondRepresentation rep = build_representation(model, analysis);
    const auto pa = analysis.source_parents();
    const Rational alpha = rep.alpha.at(a);
    std::set<Rational> atoms;
    if (alpha.is_positive()) atoms.insert(alpha);
    NodeSet hl = part.h;
    for (NodeId l : part.l()) hl.insert(l);
    for (NodeId k : hl) {
        for (NodeId j : pa[a]) {
            if (!pa[k].contains(j)) continue;
            Rational v = model.cs(a, j) * part.constant_values.at(k) / model.cs(k, j);
            if (!(v < alpha)) atoms.insert(v);
        }
        // a itself may be the term that reaches x_k.
        if (pa[k].contains(a)) {
            Rational v = part.constant_values.at(k) / model.cs(k, a);
            if (!(v < alpha)) atoms.insert(v);
        }
    }
    return atoms;
}

namespace {

struct PreparedEquation {
    std::vector<NodeId> vars;
    std::vector<double> level;  // v / a_j
    std::vector<double> cap;    // min(bound_j, v / a_j)
    std::vector<double> cumulative;
};

PreparedEquation prepare(const CondRepresentation& rep, const Equation& eq, const InnovationDist& dist) {
    PreparedEquation p;
    std::vector<double> logw;
    for (const auto& [j, coef] : eq.terms) {
        Rational level = eq.value / coef;
        Rational cap = rep.bounds[j] && *rep.bounds[j] < level ? *rep.bounds[j] : level;
        p.vars.push_back(j);
        p.level.push_back(level.to_double());
        p.cap.push_back(cap.to_double());
    }
    double log_all_below = 0;
    std::vector<double> log_below(p.vars.size());
    for (std::size_t t = 0; t < p.vars.size(); ++t) {
        log_below[t] = dist.log_cdf(p.cap[t]);
        log_all_below += log_below[t];
    }
    for (std::size_t t = 0; t < p.vars.size(); ++t) {
        const double coef = eq.terms[t].second.to_double();
        logw.push_back(dist.log_pdf(p.level[t]) - std::log(coef) + (log_all_below - log_below[t]));
    }
    double top = *std::max_element(logw.begin(), logw.end());
    if (!std::isfinite(top)) fail(ErrorCode::DegenerateBlock, "no term of an equation has positive weight");
    double acc = 0;
    for (double lw : logw) {
        acc += std::exp(lw - top);
        p.cumulative.push_back(acc);
    }
    for (double& c : p.cumulative) c /= acc;
    return p;
}

}  // namespace

SampleSet conditional_sampler(const CondRepresentation& rep, const InnovationDist& dist, std::size_t n, std::uint64_t seed) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "sample count must be positive");
    const std::size_t w = rep.n;
    SampleSet out;
    out.n = n;
    out.width = w;
    out.z.assign(n * w, 0.0);
    out.x.assign(n * w, 0.0);
    out.achiever.assign(n * rep.equations.size(), 0);

    std::vector<PreparedEquation> prepared;
    std::vector<bool> in_equation(w, false);
    for (const auto& eq : rep.equations) {
        prepared.push_back(prepare(rep, eq, dist));
        for (const auto& [j, _] : eq.terms) in_equation[j] = true;
    }
    std::vector<double> bound(w, INFINITY);
    for (NodeId v = 0; v < w; ++v)
        if (rep.bounds[v]) bound[v] = rep.bounds[v]->to_double();
    std::vector<double> constant(w, 0.0);
    for (const auto& [v, value] : rep.constants) constant[v] = value.to_double();
    std::vector<double> alpha(w, 0.0);
    std::vector<std::vector<std::pair<NodeId, double>>> terms(w);
    for (const auto& [a, value] : rep.alpha) alpha[a] = value.to_double();
    for (const auto& [a, ts] : rep.x_terms)
        for (const auto& [j, coef] : ts) terms[a].emplace_back(j, coef.to_double());

    constexpr std::size_t chunk = 1024;
    for (std::size_t start = 0; start < n; start += chunk) {
        Rng rng(mix_seed(seed, start / chunk));
        for (std::size_t row = start; row < std::min(n, start + chunk); ++row) {
            double* z = &out.z[row * w];
            double* xr = &out.x[row * w];
            for (std::size_t t = 0; t < prepared.size(); ++t) {
                const auto& p = prepared[t];
                double u = rng.uniform();
                std::size_t pick = static_cast<std::size_t>(
                    std::lower_bound(p.cumulative.begin(), p.cumulative.end(), u) - p.cumulative.begin());
                pick = std::min(pick, p.vars.size() - 1);
                out.achiever[row * prepared.size() + t] = pick;
                for (std::size_t s = 0; s < p.vars.size(); ++s)
                    z[p.vars[s]] = s == pick ? p.level[s] : dist.sample_below(rng, p.cap[s]);
            }
            for (NodeId v = 0; v < w; ++v) {
                if (in_equation[v]) continue;
                z[v] = std::isfinite(bound[v]) ? dist.sample_below(rng, bound[v]) : dist.sample(rng);
            }
            for (NodeId v = 0; v < w; ++v) {
                if (!rep.active.contains(v)) {
                    xr[v] = constant[v];
                    continue;
                }
                double value = std::max(alpha[v], z[v]);
                for (const auto& [j, coef] : terms[v]) value = std::max(value, coef * z[j]);
                xr[v] = value;
            }
        }
    }
    return out;
}

}  // namespace maxlin
