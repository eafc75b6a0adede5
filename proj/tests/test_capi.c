/* Exercises the shared library from plain C. */

#include "maxlin/maxlin.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                  \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                               \
        }                                                             \
    } while (0)

static const char* tent =
    "{\"nodes\": [\"1\", \"2\", \"3\", \"4\", \"5\"], \"edges\": ["
    "{\"from\": \"1\", \"to\": \"3\", \"weight\": \"1\"}, {\"from\": \"1\", \"to\": \"4\", \"weight\": \"1\"},"
    "{\"from\": \"1\", \"to\": \"5\", \"weight\": \"1\"}, {\"from\": \"2\", \"to\": \"3\", \"weight\": \"1\"},"
    "{\"from\": \"2\", \"to\": \"4\", \"weight\": \"1\"}, {\"from\": \"2\", \"to\": \"5\", \"weight\": \"1\"}]}";

int main(void) {
    mlbn_model* model = NULL;
    mlbn_context* ctx = NULL;
    mlbn_context* bad_ctx = NULL;
    char* out = NULL;
    int passed = 0;

    EXPECT(mlbn_model_load_string(tent, "tent", &model) == MLBN_OK);
    EXPECT(model != NULL);
    EXPECT(mlbn_model_node_count(model) == 5);

    EXPECT(mlbn_context_load_string(model, "{\"observed\": {\"4\": \"2\", \"5\": \"2\"}}", "ctx", &ctx) == MLBN_OK);

    EXPECT(mlbn_ci_json(model, "context", "3", "1,2", NULL, ctx, &out) == MLBN_OK);
    EXPECT(out && strstr(out, "\"result\": \"independent\""));
    mlbn_string_free(out);
    out = NULL;

    EXPECT(mlbn_ci_json(model, "dsep", "3", "1", "4", NULL, &out) == MLBN_OK);
    EXPECT(out && strstr(out, "\"schema\": \"maxlin-ci/1\""));
    mlbn_string_free(out);
    out = NULL;

    EXPECT(mlbn_source_dag_dot(model, ctx, &out) == MLBN_OK);
    EXPECT(out && strncmp(out, "digraph", 7) == 0);
    mlbn_string_free(out);
    out = NULL;

    EXPECT(mlbn_sample_csv(model, ctx, 10, 3, "pareto:2", &out) == MLBN_OK);
    EXPECT(out && strncmp(out, "row,", 4) == 0);
    mlbn_string_free(out);
    out = NULL;

    EXPECT(mlbn_validate_json(model, NULL, 5, &passed, &out) == MLBN_OK);
    EXPECT(passed == 1);
    mlbn_string_free(out);
    out = NULL;

    /* Error paths report a status and a message, and leave outputs untouched. */
    EXPECT(mlbn_ci_json(model, "bogus", "3", "1", "4", NULL, &out) == MLBN_ERR_INVALID_ARGUMENT);
    EXPECT(out == NULL);
    EXPECT(strlen(mlbn_last_error()) > 0);
    EXPECT(mlbn_ci_json(model, "dsep", "3", "3", NULL, NULL, &out) == MLBN_ERR_INVALID_ARGUMENT);
    EXPECT(mlbn_context_load_string(model, "{\"observed\": {\"1\": \"2\", \"3\": \"1\"}}", "bad", &bad_ctx) ==
           MLBN_OK);
    EXPECT(mlbn_source_dag_json(model, bad_ctx, &out) == MLBN_ERR_IMPOSSIBLE_CONTEXT);
    {
        mlbn_context* zero = NULL;
        EXPECT(mlbn_context_load_string(model, "{\"observed\": {\"4\": \"0\"}}", "zero", &zero) == MLBN_ERR_VALIDATION);
        EXPECT(zero == NULL);
    }

    {
        mlbn_model* broken = NULL;
        EXPECT(mlbn_model_load_string("{\"nodes\": [", "broken", &broken) == MLBN_ERR_PARSE);
        EXPECT(broken == NULL);
        EXPECT(strstr(mlbn_last_error(), "broken:1: ") != NULL);
        EXPECT(mlbn_model_load_file("/nonexistent/model.json", &broken) != MLBN_OK);
    }

    mlbn_set_enumeration_guard(4);
    EXPECT(mlbn_impact_json(model, NULL, &out) == MLBN_ERR_TOO_LARGE);
    mlbn_set_enumeration_guard(14);
    EXPECT(mlbn_impact_json(model, NULL, &out) == MLBN_OK);
    mlbn_string_free(out);

    EXPECT(strcmp(mlbn_status_name(MLBN_ERR_IMPOSSIBLE_CONTEXT), "IMPOSSIBLE_CONTEXT") == 0);

    mlbn_context_free(bad_ctx);
    mlbn_context_free(ctx);
    mlbn_model_free(model);
    mlbn_model_free(NULL);

    if (failures) {
        fprintf(stderr, "%d check(s) failed\n", failures);
        return 1;
    }
    printf("C API checks passed\n");
    return 0;
}
