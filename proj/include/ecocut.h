/* ecocut -- safe partitioning of diffusion-coupled habitat networks.
 *
 * C API over the C++ core: opaque handles, integer status codes, UTF-8 JSON
 * documents for structured results. Every function returning ECOCUT_* status
 * sets a thread-local message retrievable via ecocut_last_error(). Strings
 * returned through char** are heap-allocated; release them with
 * ecocut_string_free().
 */

#ifndef ECOCUT_H
#define ECOCUT_H

#include <stdint.h>

#if defined(_WIN32)
#define ECOCUT_API __declspec(dllexport)
#else
#define ECOCUT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ecocut_network ecocut_network;

typedef enum ecocut_status {
    ECOCUT_OK = 0,
    ECOCUT_ERR_INVALID_ARGUMENT = 1,
    ECOCUT_ERR_PARSE = 2,
    ECOCUT_ERR_VALIDATION = 3,
    ECOCUT_ERR_DISCONNECTED = 4,
    ECOCUT_ERR_RANK_TOO_LARGE = 5,
    ECOCUT_ERR_NO_CONVERGENCE = 6,
    ECOCUT_ERR_CANNOT_CONNECT = 7,
    ECOCUT_ERR_NO_SUCH_EDGE = 8,
    ECOCUT_ERR_DIMENSION = 9,
    ECOCUT_ERR_INTERNAL = 10
} ecocut_status;

ECOCUT_API const char* ecocut_version(void);

/* Message for the most recent failing call on this thread ("" if none). */
ECOCUT_API const char* ecocut_last_error(void);

ECOCUT_API void ecocut_string_free(char* s);
ECOCUT_API void ecocut_network_free(ecocut_network* net);

/* Parse a network document: JSON schema (see schemas/ecocut.schema.json) or
 * plain "u v w" edge-list lines. */
ECOCUT_API ecocut_status ecocut_network_parse(const char* text, ecocut_network** out);

ECOCUT_API ecocut_status ecocut_network_from_edges(int32_t n, const int32_t* u, const int32_t* v,
                                                   const double* w, int32_t m, ecocut_network** out);

/* Attach identical linear patch dynamics (row-major 2x2 Jacobian) to every
 * patch, or an explicit stability threshold tau. */
ECOCUT_API ecocut_status ecocut_network_set_uniform_jacobian(ecocut_network* net, const double jacobian[4]);
ECOCUT_API ecocut_status ecocut_network_set_tau(ecocut_network* net, double tau);

ECOCUT_API int32_t ecocut_network_node_count(const ecocut_network* net);
ECOCUT_API int32_t ecocut_network_edge_count(const ecocut_network* net);
ECOCUT_API ecocut_status ecocut_network_edge(const ecocut_network* net, int32_t id, int32_t* u, int32_t* v,
                                             double* w);
ECOCUT_API int ecocut_network_has_dynamics(const ecocut_network* net);

/* Canonical JSON form of the document (round-trips through parse). */
ECOCUT_API ecocut_status ecocut_network_to_json(const ecocut_network* net, char** out);

/* DOT text; cut_bits may be NULL or a 0/1 byte per edge marking cut edges. */
ECOCUT_API ecocut_status ecocut_network_to_dot(const ecocut_network* net, const uint8_t* cut_bits, char** out);

/* lambda_2 and (optionally) the Fiedler vector; connected flag mirrors
 * "lambda_2 > 0". vec may be NULL, else it must hold node_count doubles. */
ECOCUT_API ecocut_status ecocut_fiedler(const ecocut_network* net, double* lambda2, double* vec, int* connected);

/* Full stability analysis: both conditions, lambda2 bounds, necessary
 * average-degree condition. */
ECOCUT_API ecocut_status ecocut_analyze_json(const ecocut_network* net, char** out);

/* Exhaustive cut-set pipeline. objective: "min_weight", "max_weight" or
 * "max_min_fiedler". threads = 0 picks the available parallelism. */
ECOCUT_API ecocut_status ecocut_exhaustive_json(const ecocut_network* net, const char* objective,
                                                int32_t min_component_size, int32_t threads, char** out);

/* Multi-restart heuristic bisection; reproducible from (seed, trials). */
ECOCUT_API ecocut_status ecocut_bisect_json(const ecocut_network* net, int32_t trials, uint64_t seed,
                                            int32_t threads, int with_spectral_baseline, char** out);

/* Single and joint edge-removal verdicts (rank-one / rank-r Laplacian
 * updates) plus Merris-principle candidates for the Fiedler pair. us/vs hold
 * `count` node pairs. */
ECOCUT_API ecocut_status ecocut_edge_check_json(const ecocut_network* net, const int32_t* us, const int32_t* vs,
                                                int32_t count, char** out);

/* RK4 simulation from equilibrium + perturb * zero-sum pattern. csv_out
 * and/or summary_json_out may be NULL if not wanted. */
ECOCUT_API ecocut_status ecocut_simulate(const ecocut_network* net, double t_end, double dt, double perturb,
                                         int32_t stride, char** csv_out, char** summary_json_out);

/* Seeded Erdos-Renyi network; integer_weights rounds the range to integers. */
ECOCUT_API ecocut_status ecocut_generate_er(int32_t n, double p, double wmin, double wmax, int integer_weights,
                                            uint64_t seed, int require_connected, ecocut_network** out);

#ifdef __cplusplus
}
#endif

#endif /* ECOCUT_H */
