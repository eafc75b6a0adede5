#include "maxlin/maxlin.h"

#include "maxlin/errors.hpp"
#include "maxlin/io.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

struct mlbn_model {
    maxlin::WeightedDag dag;
};

struct mlbn_context {
    maxlin::Context ctx;
};

namespace {

thread_local std::string last_error;
std::atomic<std::size_t> enumeration_guard{14};

mlbn_status status_of(maxlin::ErrorCode code) {
    using maxlin::ErrorCode;
    switch (code) {
        case ErrorCode::Parse: return MLBN_ERR_PARSE;
        case ErrorCode::Validation:
        case ErrorCode::NonPositive:
        case ErrorCode::CyclicSupport: return MLBN_ERR_VALIDATION;
        case ErrorCode::ImpossibleContext: return MLBN_ERR_IMPOSSIBLE_CONTEXT;
        case ErrorCode::TooLarge: return MLBN_ERR_TOO_LARGE;
        case ErrorCode::Timeout: return MLBN_ERR_TIMEOUT;
        case ErrorCode::DimensionMismatch:
        case ErrorCode::TieDetected:
        case ErrorCode::EdgeNotCritical:
        case ErrorCode::OverlappingSets:
        case ErrorCode::InvalidArgument: return MLBN_ERR_INVALID_ARGUMENT;
        case ErrorCode::DegenerateBlock: return MLBN_ERR_INTERNAL;
    }
    return MLBN_ERR_INTERNAL;
}

template <class F>
mlbn_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return MLBN_OK;
    } catch (const maxlin::Error& e) {
        last_error = std::string(maxlin::error_code_name(e.code())) + ": " + e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        last_error = std::string("internal: ") + e.what();
        return MLBN_ERR_INTERNAL;
    } catch (...) {
        last_error = "internal: unknown exception";
        return MLBN_ERR_INTERNAL;
    }
}

char* copy_out(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::string read_file(const char* path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) maxlin::fail(maxlin::ErrorCode::Parse, std::string(path) + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void require(const void* p, const char* what) {
    if (!p) maxlin::fail(maxlin::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

maxlin::EnumerationOptions options() { return {enumeration_guard.load()}; }

maxlin::ContextAnalysis analysis_of(const mlbn_model* model, const mlbn_context* ctx) {
    require(ctx, "context");
    return maxlin::analyze_context(model->dag, ctx->ctx, options());
}

}  // namespace

extern "C" {

const char* mlbn_status_name(mlbn_status status) {
    switch (status) {
        case MLBN_OK: return "OK";
        case MLBN_ERR_PARSE: return "PARSE";
        case MLBN_ERR_VALIDATION: return "VALIDATION";
        case MLBN_ERR_IMPOSSIBLE_CONTEXT: return "IMPOSSIBLE_CONTEXT";
        case MLBN_ERR_TOO_LARGE: return "TOO_LARGE";
        case MLBN_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
        case MLBN_ERR_TIMEOUT: return "TIMEOUT";
        case MLBN_ERR_INTERNAL: return "INTERNAL";
    }
    return "UNKNOWN";
}

const char* mlbn_last_error(void) { return last_error.c_str(); }

void mlbn_string_free(char* s) { std::free(s); }

void mlbn_set_enumeration_guard(size_t nodes) { enumeration_guard.store(nodes); }

mlbn_status mlbn_model_load_file(const char* path, mlbn_model** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new mlbn_model{maxlin::io::parse_model(read_file(path), path)};
    });
}

mlbn_status mlbn_model_load_string(const char* json, const char* origin, mlbn_model** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new mlbn_model{maxlin::io::parse_model(json, origin ? origin : "<string>")};
    });
}

void mlbn_model_free(mlbn_model* model) { delete model; }

size_t mlbn_model_node_count(const mlbn_model* model) { return model ? model->dag.size() : 0; }

mlbn_status mlbn_context_load_file(const mlbn_model* model, const char* path, mlbn_context** out) {
    return guarded([&] {
        require(model, "model");
        require(path, "path");
        require(out, "out");
        *out = new mlbn_context{maxlin::io::parse_context(model->dag, read_file(path), path)};
    });
}

mlbn_status mlbn_context_load_string(const mlbn_model* model, const char* json, const char* origin, mlbn_context** out) {
    return guarded([&] {
        require(model, "model");
        require(json, "json");
        require(out, "out");
        *out = new mlbn_context{maxlin::io::parse_context(model->dag, json, origin ? origin : "<string>")};
    });
}

void mlbn_context_free(mlbn_context* ctx) { delete ctx; }

mlbn_status mlbn_kleene_json(const mlbn_model* model, char** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = copy_out(maxlin::io::dump(maxlin::io::kleene_json(model->dag)));
    });
}

mlbn_status mlbn_impact_json(const mlbn_model* model, const mlbn_context* ctx, char** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = copy_out(maxlin::io::dump(maxlin::io::impact_json(model->dag, ctx ? &ctx->ctx : nullptr, options())));
    });
}

mlbn_status mlbn_source_dag_json(const mlbn_model* model, const mlbn_context* ctx, char** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = copy_out(maxlin::io::dump(maxlin::io::source_dag_json(model->dag, analysis_of(model, ctx))));
    });
}

mlbn_status mlbn_source_dag_dot(const mlbn_model* model, const mlbn_context* ctx, char** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = copy_out(maxlin::io::source_dag_dot(model->dag, analysis_of(model, ctx)));
    });
}

mlbn_status mlbn_partition_json(const mlbn_model* model, const mlbn_context* ctx, char** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = copy_out(maxlin::io::dump(maxlin::io::partition_json(model->dag, analysis_of(model, ctx))));
    });
}

mlbn_status mlbn_ci_json(const mlbn_model* model, const char* mode, const char* i, const char* j, const char* k,
                         const mlbn_context* ctx, char** out) {
    return guarded([&] {
        require(model, "model");
        require(mode, "mode");
        require(i, "i");
        require(j, "j");
        require(out, "out");
        const auto& dag = model->dag;
        const auto m = maxlin::io::parse_ci_mode(mode);
        const maxlin::NodeSet is = maxlin::io::parse_labels(dag, i), js = maxlin::io::parse_labels(dag, j);
        maxlin::NodeSet ks = k ? maxlin::io::parse_labels(dag, k) : maxlin::NodeSet{};
        std::optional<maxlin::ContextAnalysis> analysis;
        if (m == maxlin::io::CiQueryMode::Context) {
            analysis = analysis_of(model, ctx);
            const maxlin::NodeSet observed = ctx->ctx.k();
            if (k && !ks.empty() && ks != observed)
                maxlin::fail(maxlin::ErrorCode::InvalidArgument, "K differs from the observed set of the context");
            ks = observed;
        } else if (ctx) {
            if (k && !ks.empty() && ks != ctx->ctx.k())
                maxlin::fail(maxlin::ErrorCode::InvalidArgument, "K differs from the observed set of the context");
            ks = ctx->ctx.k();
        }
        *out = copy_out(maxlin::io::dump(maxlin::io::ci_json(dag, m, is, js, ks, analysis ? &*analysis : nullptr)));
    });
}

mlbn_status mlbn_sample_csv(const mlbn_model* model, const mlbn_context* ctx, size_t n, uint64_t seed, const char* dist,
                            char** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        const auto d = maxlin::InnovationDist::parse(dist ? dist : "frechet");
        maxlin::Context empty;
        const maxlin::Context& c = ctx ? ctx->ctx : empty;
        const auto analysis = maxlin::analyze_context(model->dag, c, options());
        const auto rep = maxlin::build_representation(model->dag, analysis);
        *out = copy_out(maxlin::io::sample_csv(model->dag, maxlin::conditional_sampler(rep, d, n, seed)));
    });
}

mlbn_status mlbn_validate_json(const mlbn_model* model, const mlbn_context* ctx, uint64_t seed, int* passed,
                               char** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        maxlin::io::ValidationOptions opts;
        opts.seed = seed;
        opts.enumeration = options();
        bool ok = false;
        auto report = maxlin::io::validate_json(model->dag, ctx ? &ctx->ctx : nullptr, opts, ok);
        if (passed) *passed = ok ? 1 : 0;
        *out = copy_out(maxlin::io::dump(report));
    });
}

}  // extern "C"
