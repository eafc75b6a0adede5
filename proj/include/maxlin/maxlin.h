#ifndef MAXLIN_H
#define MAXLIN_H

/* C interface to the max-linear network engine. Results are returned as
   heap strings (JSON, CSV or DOT) released with mlbn_string_free. Every call
   returns a status; on failure mlbn_last_error() describes the problem for
   the calling thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MLBN_API __declspec(dllexport)
#else
#define MLBN_API __attribute__((visibility("default")))
#endif

typedef struct mlbn_model mlbn_model;
typedef struct mlbn_context mlbn_context;

typedef enum mlbn_status {
    MLBN_OK = 0,
    MLBN_ERR_PARSE = 1,
    MLBN_ERR_VALIDATION = 2,
    MLBN_ERR_IMPOSSIBLE_CONTEXT = 3,
    MLBN_ERR_TOO_LARGE = 4,
    MLBN_ERR_INVALID_ARGUMENT = 5,
    MLBN_ERR_TIMEOUT = 6,
    MLBN_ERR_INTERNAL = 7
} mlbn_status;

MLBN_API const char* mlbn_status_name(mlbn_status status);
MLBN_API const char* mlbn_last_error(void);
MLBN_API void mlbn_string_free(char* s);

/* Largest model size for impact-graph enumeration (default 14). */
MLBN_API void mlbn_set_enumeration_guard(size_t nodes);

/* Models: {"nodes": [...], "edges": [{"from", "to", "weight"}]}. */
MLBN_API mlbn_status mlbn_model_load_file(const char* path, mlbn_model** out);
MLBN_API mlbn_status mlbn_model_load_string(const char* json, const char* origin, mlbn_model** out);
MLBN_API void mlbn_model_free(mlbn_model* model);
MLBN_API size_t mlbn_model_node_count(const mlbn_model* model);

/* Contexts: {"observed": {label: value}}. Possibility is checked when used. */
MLBN_API mlbn_status mlbn_context_load_file(const mlbn_model* model, const char* path, mlbn_context** out);
MLBN_API mlbn_status mlbn_context_load_string(const mlbn_model* model, const char* json, const char* origin,
                                              mlbn_context** out);
MLBN_API void mlbn_context_free(mlbn_context* ctx);

MLBN_API mlbn_status mlbn_kleene_json(const mlbn_model* model, char** out);
/* ctx may be NULL. */
MLBN_API mlbn_status mlbn_impact_json(const mlbn_model* model, const mlbn_context* ctx, char** out);
MLBN_API mlbn_status mlbn_source_dag_json(const mlbn_model* model, const mlbn_context* ctx, char** out);
MLBN_API mlbn_status mlbn_source_dag_dot(const mlbn_model* model, const mlbn_context* ctx, char** out);
MLBN_API mlbn_status mlbn_partition_json(const mlbn_model* model, const mlbn_context* ctx, char** out);

/* mode: "dsep", "dstar", "critical", "effective" or "context". Label lists are
   comma-separated. In context mode K comes from ctx and k may be NULL. */
MLBN_API mlbn_status mlbn_ci_json(const mlbn_model* model, const char* mode, const char* i, const char* j,
                                  const char* k, const mlbn_context* ctx, char** out);

/* dist: "frechet", "lognormal:MU,SIGMA" or "pareto:ALPHA". ctx may be NULL. */
MLBN_API mlbn_status mlbn_sample_csv(const mlbn_model* model, const mlbn_context* ctx, size_t n, uint64_t seed,
                                     const char* dist, char** out);

/* Runs the oracle suite; *passed is set to 1 when every check passes. ctx may be NULL. */
MLBN_API mlbn_status mlbn_validate_json(const mlbn_model* model, const mlbn_context* ctx, uint64_t seed, int* passed,
                                        char** out);

#ifdef __cplusplus
}
#endif

#endif
