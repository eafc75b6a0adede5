// Command-line front end. Talks to the engine only through the C API.

#include "maxlin/maxlin.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitImpossible = 3;

struct ModelDeleter {
    void operator()(mlbn_model* m) const { mlbn_model_free(m); }
};
struct ContextDeleter {
    void operator()(mlbn_context* c) const { mlbn_context_free(c); }
};
using ModelPtr = std::unique_ptr<mlbn_model, ModelDeleter>;
using ContextPtr = std::unique_ptr<mlbn_context, ContextDeleter>;

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Thrown after the error has been reported.
struct Exit {
    int code;
};

[[noreturn]] void report(mlbn_status status) {
    std::cerr << "{\"error\": \"" << mlbn_status_name(status) << "\", \"message\": \"" << json_escape(mlbn_last_error())
              << "\"}\n";
    throw Exit{status == MLBN_ERR_IMPOSSIBLE_CONTEXT ? kExitImpossible : kExitUsage};
}

void check(mlbn_status status) {
    if (status != MLBN_OK) report(status);
}

struct Output {
    std::string path;

    void write(char* text) const {
        std::unique_ptr<char, void (*)(char*)> owned(text, mlbn_string_free);
        if (path.empty() || path == "-") {
            std::fputs(text, stdout);
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "{\"error\": \"IO\", \"message\": \"cannot write " << json_escape(path) << "\"}\n";
            throw Exit{kExitUsage};
        }
        out << text;
    }
};

ModelPtr load_model(const std::string& path) {
    mlbn_model* m = nullptr;
    check(mlbn_model_load_file(path.c_str(), &m));
    return ModelPtr(m);
}

ContextPtr load_context(const mlbn_model* model, const std::string& path) {
    if (path.empty()) return nullptr;
    mlbn_context* c = nullptr;
    check(mlbn_context_load_file(model, path.c_str(), &c));
    return ContextPtr(c);
}

void apply_guard_from_env() {
    const char* env = std::getenv("MAXLIN_GUARD");
    if (!env || !*env) return;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) {
        std::cerr << "{\"error\": \"USAGE\", \"message\": \"MAXLIN_GUARD must be a positive integer\"}\n";
        throw Exit{kExitUsage};
    }
    mlbn_set_enumeration_guard(static_cast<size_t>(v));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact conditional-independence engine for max-linear Bayesian networks"};
    app.require_subcommand(1);
    std::string model_path, context_path, out_path;
    auto add_common = [&](CLI::App* sub, bool context_required) {
        sub->add_option("model,--model,-m", model_path, "model JSON file")->required();
        auto* c = sub->add_option("--context,-c", context_path, "context JSON file");
        if (context_required) c->required();
        sub->add_option("--out,-o", out_path, "write output here instead of stdout");
    };

    auto* kleene = app.add_subcommand("kleene", "Kleene star C* and the reachability DAG");
    kleene->add_option("model,--model,-m", model_path, "model JSON file")->required();
    kleene->add_option("--out,-o", out_path, "write output here instead of stdout");

    auto* impact = app.add_subcommand("impact", "impact graphs, optionally those compatible with a context");
    add_common(impact, false);

    bool dot = false;
    auto* source = app.add_subcommand("source-dag", "source DAG of a context");
    add_common(source, true);
    source->add_flag("--dot", dot, "emit Graphviz DOT instead of JSON");

    auto* part = app.add_subcommand("partition", "constant nodes, partition and conditional representation");
    add_common(part, true);

    std::string mode, i_list, j_list, k_list;
    auto* ci = app.add_subcommand("ci", "conditional-independence query");
    add_common(ci, false);
    ci->add_option("--mode", mode, "dsep, dstar, critical, effective or context")
        ->required()
        ->check(CLI::IsMember({"dsep", "dstar", "critical", "effective", "context"}));
    ci->add_option("--i", i_list, "comma-separated labels")->required();
    ci->add_option("--j", j_list, "comma-separated labels")->required();
    ci->add_option("--k", k_list, "comma-separated labels (defaults to the context's observed set)");

    std::size_t n = 1000;
    std::uint64_t seed = 1;
    std::string dist = "frechet";
    auto* sample = app.add_subcommand("sample", "conditional samples as CSV");
    add_common(sample, false);
    sample->add_option("--n", n, "number of samples")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "random seed");
    sample->add_option("--dist", dist, "frechet, lognormal:MU,SIGMA or pareto:ALPHA");

    auto* validate = app.add_subcommand("validate", "run the oracle suite against the model");
    add_common(validate, false);
    validate->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        apply_guard_from_env();
        ModelPtr model = load_model(model_path);
        ContextPtr ctx = load_context(model.get(), context_path);
        Output output{out_path};
        char* text = nullptr;
        if (*kleene) {
            check(mlbn_kleene_json(model.get(), &text));
        } else if (*impact) {
            check(mlbn_impact_json(model.get(), ctx.get(), &text));
        } else if (*source) {
            check(dot ? mlbn_source_dag_dot(model.get(), ctx.get(), &text)
                      : mlbn_source_dag_json(model.get(), ctx.get(), &text));
        } else if (*part) {
            check(mlbn_partition_json(model.get(), ctx.get(), &text));
        } else if (*ci) {
            check(mlbn_ci_json(model.get(), mode.c_str(), i_list.c_str(), j_list.c_str(),
                               k_list.empty() ? nullptr : k_list.c_str(), ctx.get(), &text));
        } else if (*sample) {
            check(mlbn_sample_csv(model.get(), ctx.get(), n, seed, dist.c_str(), &text));
        } else if (*validate) {
            int passed = 0;
            check(mlbn_validate_json(model.get(), ctx.get(), seed, &passed, &text));
            output.write(text);
            return passed ? kExitOk : kExitCheckFailed;
        }
        output.write(text);
        return kExitOk;
    } catch (const Exit& e) {
        return e.code;
    }
}
