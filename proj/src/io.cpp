#include "maxlin/io.hpp"

#include "maxlin/errors.hpp"
#include "maxlin/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace maxlin::io {

namespace {

// Line numbers of the interesting elements, found by a raw scan of the text.
struct Anchors {
    std::size_t nodes_line = 1;
    std::vector<std::size_t> node_lines;
    std::size_t edges_line = 1;
    std::vector<std::size_t> edge_lines;
    std::size_t observed_line = 1;
    std::map<std::string, std::size_t> observed_lines;
};

Anchors scan(const std::string& text) {
    Anchors a;
    std::vector<char> stack;
    std::vector<bool> expect_key;
    std::string top_key, last_key, token;
    std::size_t line = 1;
    bool in_string = false, escaped = false;
    for (char c : text) {
        if (c == '\n') ++line;
        if (in_string) {
            if (escaped) {
                escaped = false;
                token.push_back(c);
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
                const std::size_t depth = stack.size();
                const bool is_key = depth > 0 && stack.back() == '{' && expect_key.back();
                if (depth == 1 && is_key) last_key = token;
                if (depth == 2 && stack[1] == '[' && top_key == "nodes") a.node_lines.push_back(line);
                if (depth == 2 && is_key && top_key == "observed") a.observed_lines.emplace(token, line);
            } else {
                token.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_string = true;
                token.clear();
                break;
            case '{':
            case '[':
                if (stack.size() == 1) {
                    top_key = last_key;
                    if (top_key == "nodes") a.nodes_line = line;
                    if (top_key == "edges") a.edges_line = line;
                    if (top_key == "observed") a.observed_line = line;
                }
                if (stack.size() == 2 && stack[1] == '[' && top_key == "edges" && c == '{') a.edge_lines.push_back(line);
                stack.push_back(c);
                expect_key.push_back(c == '{');
                break;
            case '}':
            case ']':
                if (!stack.empty()) {
                    stack.pop_back();
                    expect_key.pop_back();
                }
                break;
            case ':':
                if (!expect_key.empty()) expect_key.back() = false;
                break;
            case ',':
                if (!stack.empty() && stack.back() == '{') expect_key.back() = true;
                break;
            default: break;
        }
    }
    return a;
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

[[noreturn]] void fail_at(ErrorCode code, const std::string& origin, std::size_t line, const std::string& msg) {
    fail(code, origin + ":" + std::to_string(line) + ": " + msg);
}

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::string what = e.what();
        if (auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
        fail_at(ErrorCode::Parse, origin, line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1), what);
    }
}

std::size_t line_at(std::size_t i, const std::vector<std::size_t>& lines, std::size_t fallback) {
    return i < lines.size() ? lines[i] : fallback;
}

Json labels_json(const WeightedDag& model, const NodeSet& s) {
    Json out = Json::array();
    for (NodeId v : s) out.push_back(model.label(v));
    return out;
}

Json edges_json(const WeightedDag& model, const EdgeSet& edges) {
    Json out = Json::array();
    for (const auto& e : edges) out.push_back(Json::array({model.label(e.from), model.label(e.to)}));
    return out;
}

Json matrix_json(const TropMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json galaxy_json(const WeightedDag& model, const Galaxy& g) {
    Json roots = Json::array();
    for (NodeId r : g.roots()) roots.push_back(model.label(r));
    return Json{{"edges", edges_json(model, g.edges())}, {"roots", roots}};
}

Json context_json(const WeightedDag& model, const Context& ctx) {
    Json obs = Json::object();
    for (const auto& [k, v] : ctx.observed) obs[model.label(k)] = rational_json(v);
    return obs;
}

Json path_json(const WeightedDag& model, const StarPath& p, const EdgeSet& graph) {
    Json nodes = Json::array();
    for (NodeId v : p.nodes) nodes.push_back(model.label(v));
    return Json{{"shape", shape_name(p.shape)},
                {"nodes", nodes},
                {"collider", p.collider ? Json(model.label(*p.collider)) : Json(nullptr)},
                {"edges", edges_json(model, p.edges(graph))}};
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

WeightedDag parse_model(const std::string& text, const std::string& origin) {
    const Json doc = parse_json(text, origin);
    const Anchors anchors = scan(text);
    if (!doc.is_object()) fail_at(ErrorCode::Parse, origin, 1, "model must be a JSON object");
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        fail_at(ErrorCode::Parse, origin, 1, "model needs a \"nodes\" array");
    std::vector<std::string> labels;
    std::map<std::string, NodeId> ids;
    for (std::size_t t = 0; t < doc["nodes"].size(); ++t) {
        const std::size_t line = line_at(t, anchors.node_lines, anchors.nodes_line);
        const Json& node = doc["nodes"][t];
        if (!node.is_string()) fail_at(ErrorCode::Parse, origin, line, "node labels must be strings");
        const std::string label = node.get<std::string>();
        if (label.empty()) fail_at(ErrorCode::Validation, origin, line, "empty node label");
        if (label.find(',') != std::string::npos)
            fail_at(ErrorCode::Validation, origin, line, "node label \"" + label + "\" contains a comma");
        if (!ids.emplace(label, labels.size()).second)
            fail_at(ErrorCode::Validation, origin, line, "duplicate node label \"" + label + "\"");
        labels.push_back(label);
    }
    std::vector<WeightedEdge> edges;
    std::vector<std::size_t> edge_line;
    std::set<Edge> seen;
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) fail_at(ErrorCode::Parse, origin, anchors.edges_line, "\"edges\" must be an array");
        for (std::size_t t = 0; t < doc["edges"].size(); ++t) {
            const std::size_t line = line_at(t, anchors.edge_lines, anchors.edges_line);
            const Json& e = doc["edges"][t];
            if (!e.is_object()) fail_at(ErrorCode::Parse, origin, line, "edges must be objects");
            for (const char* field : {"from", "to", "weight"})
                if (!e.contains(field) || !e[field].is_string())
                    fail_at(ErrorCode::Parse, origin, line, std::string("edge field \"") + field + "\" must be a string");
            const std::string from = e["from"], to = e["to"], weight = e["weight"];
            auto f = ids.find(from), g = ids.find(to);
            if (f == ids.end()) fail_at(ErrorCode::Validation, origin, line, "edge references unknown node \"" + from + "\"");
            if (g == ids.end()) fail_at(ErrorCode::Validation, origin, line, "edge references unknown node \"" + to + "\"");
            if (f->second == g->second) fail_at(ErrorCode::Validation, origin, line, "self-loop on \"" + from + "\"");
            Rational w;
            try {
                w = Rational::parse(weight);
            } catch (const Error& err) {
                fail_at(ErrorCode::Parse, origin, line, err.what());
            }
            if (!w.is_positive())
                fail_at(ErrorCode::Validation, origin, line, "edge " + from + "->" + to + " has nonpositive weight " + weight);
            if (!seen.insert({f->second, g->second}).second)
                fail_at(ErrorCode::Validation, origin, line, "duplicate edge " + from + "->" + to);
            edges.push_back({f->second, g->second, w});
            edge_line.push_back(line);
        }
    }
    // Cycle check, reporting the edge that closes the first cycle found.
    const std::size_t n = labels.size();
    std::vector<std::vector<std::size_t>> out_edges(n);
    for (std::size_t t = 0; t < edges.size(); ++t) out_edges[edges[t].from].push_back(t);
    std::vector<int> state(n, 0);
    std::function<void(NodeId)> visit = [&](NodeId v) {
        state[v] = 1;
        for (std::size_t t : out_edges[v]) {
            NodeId w = edges[t].to;
            if (state[w] == 1)
                fail_at(ErrorCode::Validation, origin, edge_line[t],
                        "edge " + labels[v] + "->" + labels[w] + " closes a directed cycle");
            if (state[w] == 0) visit(w);
        }
        state[v] = 2;
    };
    for (NodeId v = 0; v < n; ++v)
        if (state[v] == 0) visit(v);
    return WeightedDag(std::move(labels), edges);
}

Context parse_context(const WeightedDag& model, const std::string& text, const std::string& origin) {
    const Json doc = parse_json(text, origin);
    const Anchors anchors = scan(text);
    if (!doc.is_object() || !doc.contains("observed") || !doc["observed"].is_object())
        fail_at(ErrorCode::Parse, origin, 1, "context needs an \"observed\" object");
    std::map<NodeId, Rational> observed;
    for (const auto& [label, value] : doc["observed"].items()) {
        auto it = anchors.observed_lines.find(label);
        const std::size_t line = it == anchors.observed_lines.end() ? anchors.observed_line : it->second;
        const auto& all = model.labels();
        auto pos = std::find(all.begin(), all.end(), label);
        if (pos == all.end()) fail_at(ErrorCode::Validation, origin, line, "unknown node \"" + label + "\"");
        if (!value.is_string()) fail_at(ErrorCode::Parse, origin, line, "observed values must be strings");
        Rational v;
        try {
            v = Rational::parse(value.get<std::string>());
        } catch (const Error& err) {
            fail_at(ErrorCode::Parse, origin, line, err.what());
        }
        if (!v.is_positive()) fail_at(ErrorCode::Validation, origin, line, "observed value of \"" + label + "\" must be positive");
        observed[static_cast<NodeId>(pos - all.begin())] = v;
    }
    return make_context(model, std::move(observed));
}

NodeSet parse_labels(const WeightedDag& model, const std::string& list) {
    NodeSet out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.insert(model.id(item.substr(b, e - b + 1)));
    }
    return out;
}

Json rational_json(const Rational& r) { return Json{{"fraction", r.str()}, {"decimal", r.to_double()}}; }

Json kleene_json(const WeightedDag& model) {
    Json nodes = Json::array();
    for (const auto& l : model.labels()) nodes.push_back(l);
    return Json{{"schema", "maxlin-kleene/1"},
                {"nodes", nodes},
                {"c", matrix_json(model.c())},
                {"c_star", matrix_json(model.c_star())},
                {"reachability_edges", edges_json(model, reachability_dag(model).edges)}};
}

Json impact_json(const WeightedDag& model, const Context* ctx, const EnumerationOptions& opts) {
    Json out{{"schema", "maxlin-impact/1"}};
    GalaxySet all = enumerate_impact_graphs(model, opts);
    Json list = Json::array();
    for (const auto& g : all) list.push_back(galaxy_json(model, g));
    out["count"] = all.size();
    out["galaxies"] = list;
    if (ctx) {
        CompatibleSet cs = compatible_impact_graphs(model, *ctx, opts);
        if (!cs.possible()) fail(ErrorCode::ImpossibleContext, "no impact graph is compatible with the context");
        Json compat = Json::array(), rejected = Json::array();
        for (const auto& g : cs.galaxies) compat.push_back(galaxy_json(model, g));
        for (const auto& g : cs.rejected_feasible) rejected.push_back(galaxy_json(model, g));
        out["context"] = context_json(model, *ctx);
        out["min_rank"] = cs.min_rank;
        out["compatible"] = compat;
        out["feasible_higher_rank"] = rejected;
    }
    return out;
}

Json source_dag_json(const WeightedDag& model, const ContextAnalysis& analysis) {
    EdgeSet absent;
    for (const auto& e : model.edges())
        if (!analysis.source.edges.contains(e)) absent.insert(e);
    return Json{{"schema", "maxlin-source-dag/1"},
                {"context", context_json(model, analysis.ctx)},
                {"edges", edges_json(model, analysis.source.edges)},
                {"removed", edges_json(model, analysis.source.removed)},
                {"model_edges_absent", edges_json(model, absent)},
                {"total_impact", edges_json(model, analysis.source.total_impact)},
                {"constant_nodes", labels_json(model, analysis.partition.k_star)}};
}

std::string source_dag_dot(const WeightedDag& model, const ContextAnalysis& analysis) {
    const NodeSet k = analysis.ctx.k();
    std::ostringstream os;
    os << "digraph source_dag {\n";
    for (NodeId v = 0; v < model.size(); ++v) {
        os << "  " << dot_quote(model.label(v));
        if (k.contains(v))
            os << " [style=filled, fillcolor=red]";
        else if (analysis.partition.k_star.contains(v))
            os << " [style=\"filled,dotted\", fillcolor=pink]";
        os << ";\n";
    }
    for (const auto& e : analysis.source.edges)
        os << "  " << dot_quote(model.label(e.from)) << " -> " << dot_quote(model.label(e.to)) << ";\n";
    for (const auto& e : analysis.source.removed)
        os << "  " << dot_quote(model.label(e.from)) << " -> " << dot_quote(model.label(e.to))
           << " [style=dashed, color=gray];\n";
    os << "}\n";
    return os.str();
}

Json partition_json(const WeightedDag& model, const ContextAnalysis& analysis) {
    const Partition& p = analysis.partition;
    Json blocks = Json::array();
    for (const auto& b : p.l_blocks) blocks.push_back(labels_json(model, b));
    Json constants = Json::object();
    for (const auto& [v, x] : p.constant_values) constants[model.label(v)] = rational_json(x);

    CondRepresentation rep = build_representation(model, analysis);
    Json alpha = Json::object(), bounds = Json::object(), equations = Json::array(), zblocks = Json::array();
    for (const auto& [a, value] : rep.alpha) alpha[model.label(a)] = rational_json(value);
    for (NodeId v = 0; v < model.size(); ++v)
        if (rep.bounds[v]) bounds[model.label(v)] = rational_json(*rep.bounds[v]);
    for (const auto& eq : rep.equations) {
        Json terms = Json::array();
        for (const auto& [j, coef] : eq.terms)
            terms.push_back(Json{{"node", model.label(j)}, {"coefficient", rational_json(coef)}});
        equations.push_back(Json{{"anchor", model.label(eq.anchor)},
                                 {"kind", eq.from_h ? "H" : "L"},
                                 {"value", rational_json(eq.value)},
                                 {"terms", terms}});
    }
    for (const auto& b : z_dependency_blocks(rep)) zblocks.push_back(labels_json(model, b));
    Json atoms = Json::object();
    for (NodeId a : p.a) {
        Json list = Json::array();
        for (const auto& r : atoms_of(model, analysis, a)) list.push_back(rational_json(r));
        atoms[model.label(a)] = list;
    }
    return Json{{"schema", "maxlin-partition/1"},
                {"context", context_json(model, analysis.ctx)},
                {"A", labels_json(model, p.a)},
                {"H", labels_json(model, p.h)},
                {"U", labels_json(model, p.u)},
                {"L", blocks},
                {"K_star", labels_json(model, p.k_star)},
                {"constants", constants},
                {"warnings", analysis.constants.warnings},
                {"representation",
                 Json{{"alpha", alpha},
                      {"bounds", bounds},
                      {"equations", equations},
                      {"z_blocks", zblocks},
                      {"atoms", atoms},
                      {"notes", rep.notes}}}};
}

CiQueryMode parse_ci_mode(const std::string& name) {
    if (name == "dsep") return CiQueryMode::DSep;
    if (name == "dstar") return CiQueryMode::DStar;
    if (name == "critical") return CiQueryMode::Critical;
    if (name == "effective") return CiQueryMode::Effective;
    if (name == "context") return CiQueryMode::Context;
    fail(ErrorCode::InvalidArgument, "unknown mode \"" + name + "\" (dsep, dstar, critical, effective, context)");
}

Json ci_json(const WeightedDag& model, CiQueryMode mode, const NodeSet& i, const NodeSet& j, const NodeSet& k,
             const ContextAnalysis* analysis) {
    static const char* names[] = {"dsep", "dstar", "critical", "effective", "context"};
    Json out{{"schema", "maxlin-ci/1"},
             {"mode", names[static_cast<int>(mode)]},
             {"I", labels_json(model, i)},
             {"J", labels_json(model, j)},
             {"K", labels_json(model, k)}};
    if (mode == CiQueryMode::DSep) {
        out["result"] = d_separated(model, i, j, k) ? "independent" : "dependent";
        return out;
    }
    CIVerdict v;
    EdgeSet graph;
    switch (mode) {
        case CiQueryMode::DStar:
            v = ci_generic(model, i, j, k);
            graph = conditional_reach_dag(model, k).edges;
            break;
        case CiQueryMode::Critical:
            v = ci_fixed_c(model, i, j, k);
            graph = critical_dag(model, k).edges;
            break;
        case CiQueryMode::Effective:
            v = ci_fixed_c_complete(model, i, j, k);
            graph = critical_dag(model, k).edges;
            break;
        case CiQueryMode::Context:
            if (!analysis) fail(ErrorCode::InvalidArgument, "mode context needs a context");
            v = ci_context(model, *analysis, i, j);
            graph = analysis->source.edges;
            out["context"] = context_json(model, analysis->ctx);
            break;
        case CiQueryMode::DSep: break;
    }
    out["result"] = v.independent ? "independent" : "dependent";
    out["paths_examined"] = v.paths_examined;
    out["witness"] = v.witness ? path_json(model, *v.witness, graph) : Json(nullptr);
    if (v.witness_coefficients) {
        Json coeffs = Json::array();
        for (const auto& e : *v.witness_coefficients)
            coeffs.push_back(Json{{"from", model.label(e.from)}, {"to", model.label(e.to)}, {"weight", rational_json(e.weight)}});
        out["witness_coefficients"] = coeffs;
    }
    if (mode == CiQueryMode::Effective) {
        Json paths = Json::array();
        for (const auto& p : star_connecting_paths(model.size(), graph, k, i, j)) {
            PathEffectiveness eff = path_effective(model, k, p);
            Json entry = path_json(model, p, graph);
            entry["effective"] = eff.effective;
            entry["lambda_vs_one"] = ordering_name(eff.comparison.order);
            entry["matrix"] = matrix_json(eff.matrix);
            paths.push_back(std::move(entry));
        }
        out["matrix_index"] = labels_json(model, k);
        out["paths"] = paths;
    }
    return out;
}

std::string sample_csv(const WeightedDag& model, const SampleSet& samples) {
    std::string out = "row";
    for (const auto& l : model.labels()) out += ",X_" + l;
    for (const auto& l : model.labels()) out += ",Z_" + l;
    out += "\n";
    char buf[32];
    for (std::size_t r = 0; r < samples.n; ++r) {
        out += std::to_string(r);
        for (NodeId v = 0; v < samples.width; ++v) {
            std::snprintf(buf, sizeof buf, ",%.17g", samples.x_at(r, v));
            out += buf;
        }
        for (NodeId v = 0; v < samples.width; ++v) {
            std::snprintf(buf, sizeof buf, ",%.17g", samples.z_at(r, v));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

Json validate_json(const WeightedDag& model, const Context* ctx, const ValidationOptions& opts, bool& passed) {
    Json checks = Json::array();
    passed = true;
    auto record = [&](const std::string& name, const std::string& status, Json detail) {
        if (status == "fail") passed = false;
        checks.push_back(Json{{"name", name}, {"status", status}, {"detail", std::move(detail)}});
    };
    const InnovationDist frechet = InnovationDist::frechet();
    const std::size_t n = model.size();

    record("closure_idempotent", trop_mul(model.c_star(), model.c_star()) == model.c_star() ? "pass" : "fail", Json::object());

    {
        Rng rng(mix_seed(opts.seed, 1));
        std::size_t mismatches = 0, ties = 0;
        for (std::size_t t = 0; t < opts.exact_checks; ++t) {
            RatVec z(n);
            for (auto& v : z) v = Rational::from_double(frechet.sample(rng));
            oracle::Recursion rec = oracle::recursive_evaluate(model, z);
            if (evaluate(model, z) != rec.x) ++mismatches;
            if (!rec.galaxy) {
                ++ties;
                continue;
            }
            if (realized_impact_graph(model, z) != *rec.galaxy) ++mismatches;
        }
        record("evaluation_matches_recursion", mismatches == 0 ? "pass" : "fail",
               Json{{"draws", opts.exact_checks}, {"mismatches", mismatches}, {"ties", ties}});
    }

    oracle::SampleBatch batch = oracle::sample_model(model, opts.mc_draws, frechet, mix_seed(opts.seed, 2));
    std::map<Galaxy, std::size_t> realized;
    for (const auto& g : batch.galaxies) ++realized[g];
    {
        std::size_t invalid = 0;
        for (const auto& [g, count] : realized)
            if (!is_impact_graph(model, g).valid) ++invalid;
        record("realized_galaxies_are_impact_graphs", invalid == 0 ? "pass" : "fail",
               Json{{"distinct_realized", realized.size()}, {"invalid", invalid}});
    }
    try {
        GalaxySet all = enumerate_impact_graphs(model, opts.enumeration);
        std::size_t outside = 0, unseen = 0;
        for (const auto& [g, count] : realized)
            if (!all.contains(g)) ++outside;
        for (const auto& g : all)
            if (!realized.contains(g)) ++unseen;
        record("enumeration_covers_simulation", outside == 0 ? "pass" : "fail",
               Json{{"enumerated", all.size()}, {"realized", realized.size()}, {"realized_not_enumerated", outside},
                    {"enumerated_not_realized", unseen}});
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge) throw;
        record("enumeration_covers_simulation", "skipped", Json{{"reason", e.what()}});
    }
    {
        std::map<Galaxy, ImpactExchange> cache;
        std::size_t violations = 0;
        const std::size_t rows = std::min<std::size_t>(batch.n, 10000);
        for (std::size_t r = 0; r < rows; ++r) {
            const Galaxy& g = batch.galaxies[r];
            auto it = cache.find(g);
            if (it == cache.end()) it = cache.emplace(g, impact_exchange(model, g)).first;
            const ImpactExchange& ex = it->second;
            for (std::size_t a = 0; a < ex.roots.size(); ++a)
                for (std::size_t b = 0; b < ex.roots.size(); ++b) {
                    const double lhs = ex.m(a, b).to_double() * batch.z_at(r, ex.roots[b]);
                    if (lhs > batch.z_at(r, ex.roots[a]) * (1 + 1e-12)) ++violations;
                }
        }
        record("exchange_subeigenvector", violations == 0 ? "pass" : "fail", Json{{"rows", rows}, {"violations", violations}});
    }

    if (ctx) {
        ContextAnalysis analysis = analyze_context(model, *ctx, opts.enumeration);
        record("context_possible", "pass", Json{{"compatible", analysis.compatible.galaxies.size()}});
        CondRepresentation rep = build_representation(model, analysis);
        SampleSet cond = conditional_sampler(rep, frechet, opts.conditional_draws, mix_seed(opts.seed, 3));
        oracle::RejectionOptions ropts;
        try {
            oracle::SampleBatch rej =
                oracle::rejection_band_sampler(model, *ctx, opts.conditional_draws, frechet, mix_seed(opts.seed, 4), ropts);
            Json per_node = Json::object();
            bool ok = true;
            for (NodeId a : analysis.partition.a) {
                std::vector<double> xs(cond.n);
                for (std::size_t r = 0; r < cond.n; ++r) xs[r] = cond.x_at(r, a);
                const double d = oracle::ks_statistic_shifted(xs, rej.x_column(a), ropts.eps);
                per_node[model.label(a)] = d;
                ok = ok && d <= 0.03;
            }
            record("conditional_matches_rejection", ok ? "pass" : "fail",
                   Json{{"ks", per_node}, {"tolerance", 0.03}, {"acceptance_rate", rej.acceptance_rate}});
            std::size_t off = 0;
            for (const auto& [v, value] : analysis.partition.constant_values)
                for (std::size_t r = 0; r < rej.n; ++r)
                    if (std::abs(rej.x_at(r, v) - value.to_double()) > 2 * ropts.eps * value.to_double()) ++off;
            record("constants_pinned_in_band", off == 0 ? "pass" : "fail", Json{{"violations", off}});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Timeout) throw;
            record("conditional_matches_rejection", "skipped", Json{{"reason", e.what()}});
        }
    }
    return Json{{"schema", "maxlin-validate/1"}, {"passed", passed}, {"checks", checks}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace maxlin::io
