#pragma once
// JSON, CSV and DOT front end shared by the C API.

#include "maxlin/representation.hpp"
#include "maxlin/separation.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxlin::io {

using Json = nlohmann::ordered_json;

/// Parses {"nodes": [...], "edges": [{"from", "to", "weight"}]}. Errors carry "origin:line: ".
WeightedDag parse_model(const std::string& text, const std::string& origin);

/// Parses {"observed": {label: value}} against a model.
Context parse_context(const WeightedDag& model, const std::string& text, const std::string& origin);

/// Comma-separated labels; empty input gives the empty set.
NodeSet parse_labels(const WeightedDag& model, const std::string& list);

Json rational_json(const Rational& r);

Json kleene_json(const WeightedDag& model);
Json impact_json(const WeightedDag& model, const Context* ctx, const EnumerationOptions& opts);
Json source_dag_json(const WeightedDag& model, const ContextAnalysis& analysis);
std::string source_dag_dot(const WeightedDag& model, const ContextAnalysis& analysis);
Json partition_json(const WeightedDag& model, const ContextAnalysis& analysis);

enum class CiQueryMode { DSep, DStar, Critical, Effective, Context };
CiQueryMode parse_ci_mode(const std::string& name);

Json ci_json(const WeightedDag& model, CiQueryMode mode, const NodeSet& i, const NodeSet& j, const NodeSet& k,
             const ContextAnalysis* analysis);

std::string sample_csv(const WeightedDag& model, const SampleSet& samples);

struct ValidationOptions {
    std::uint64_t seed = 1;
    std::size_t mc_draws = 100000;
    std::size_t exact_checks = 500;
    std::size_t conditional_draws = 10000;
    EnumerationOptions enumeration;
};

/// Runs the oracle suite against the model, and against the context when one is given.
Json validate_json(const WeightedDag& model, const Context* ctx, const ValidationOptions& opts, bool& passed);

/// Serializes with two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace maxlin::io
