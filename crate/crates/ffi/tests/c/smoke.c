#include <math.h>
#include <stdio.h>

#include "psi_score.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    PsiGraph *graph = NULL;
    PsiActivity *activity = NULL;
    PsiResult *result = NULL;
    double scores[2];

    CHECK(psi_graph_from_edge_list("0 1\n", &graph) == PSI_STATUS_OK);
    CHECK(psi_graph_num_nodes(graph) == 2);
    CHECK(psi_activity_homogeneous(2, 0.5, 0.5, &activity) == PSI_STATUS_OK);
    CHECK(psi_compute(graph, activity, PSI_METHOD_POWER_PSI, 1e-12, 1000, &result) == PSI_STATUS_OK);
    CHECK(psi_result_len(result) == 2);
    CHECK(psi_result_scores(result, scores, 2) == PSI_STATUS_OK);
    CHECK(fabs(scores[0] - 0.25) < 1e-12 && fabs(scores[1] - 0.375) < 1e-12);
    CHECK(psi_result_converged(result));
    psi_result_free(result);

    CHECK(psi_pagerank(graph, 1.5, 1e-9, 100, &result) == PSI_STATUS_INVALID_ARGUMENT);
    CHECK(psi_last_error_message() != NULL);

    psi_activity_free(activity);
    psi_graph_free(graph);
    printf("ok %s\n", psi_version());
    return 0;
}
