/*
 * ifsnet C API.
 *
 * Every object is an opaque handle created by an ifs_*_create/build/read
 * function and released with the matching ifs_*_free. Functions returning
 * ifs_status report failures through the status code; the message of the
 * most recent failure on the calling thread is available from
 * ifs_last_error(). Out-parameters are left untouched on failure.
 */
#ifndef IFSNET_IFSNET_H
#define IFSNET_IFSNET_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#  ifdef IFSNET_BUILDING_LIBRARY
#    define IFSNET_API __declspec(dllexport)
#  else
#    define IFSNET_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define IFSNET_API __attribute__((visibility("default")))
#else
#  define IFSNET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ifs_status {
    IFS_OK = 0,
    IFS_E_INVALID_ARGUMENT = 1, /* bad parameter or null handle */
    IFS_E_PARSE = 2,            /* malformed input data */
    IFS_E_IO = 3,               /* file could not be opened or written */
    IFS_E_DOMAIN = 4,           /* operation undefined for this input, e.g. zero total weight */
    IFS_E_INTERNAL = 5
} ifs_status;

typedef struct ifs_event_log ifs_event_log;
typedef struct ifs_tie_graph ifs_tie_graph;
typedef struct ifs_snapshot ifs_snapshot;
typedef struct ifs_pagerank ifs_pagerank;
typedef struct ifs_assignment ifs_assignment;
typedef struct ifs_category_map ifs_category_map;

IFSNET_API const char* ifs_version(void);
IFSNET_API const char* ifs_status_string(ifs_status status);
/* Message of the last failed call on this thread, "" if none. */
IFSNET_API const char* ifs_last_error(void);

/* Parameter header: "key=value" lines embedded as comments / JSON members in
 * every file the library writes. May be NULL. Entries are separated by '\n'. */

/* ---- event logs ------------------------------------------------------- */

IFSNET_API ifs_status ifs_event_log_read_csv(const char* path, ifs_event_log** out);
IFSNET_API ifs_status ifs_event_log_parse_csv(const char* data, size_t size, ifs_event_log** out);
IFSNET_API ifs_status ifs_event_log_write_csv(const ifs_event_log* log, const char* path);
/* Keeps spend records at the given locations (all locations when count == 0). */
IFSNET_API ifs_status ifs_event_log_filter(const ifs_event_log* log, const char* const* locations, size_t count,
                                           ifs_event_log** out);
IFSNET_API size_t ifs_event_log_record_count(const ifs_event_log* log);
IFSNET_API size_t ifs_event_log_student_count(const ifs_event_log* log);
IFSNET_API size_t ifs_event_log_location_count(const ifs_event_log* log);
IFSNET_API void ifs_event_log_time_range(const ifs_event_log* log, int64_t* first, int64_t* last);
IFSNET_API void ifs_event_log_free(ifs_event_log* log);

/* ---- tie graphs ------------------------------------------------------- */

/* Co-occurrence counting within window seconds, then degree orientation. */
IFSNET_API ifs_status ifs_tie_graph_build(const ifs_event_log* log, int64_t window, ifs_tie_graph** out);
IFSNET_API ifs_status ifs_tie_graph_read(const char* path, ifs_tie_graph** out);
IFSNET_API ifs_status ifs_tie_graph_write(const ifs_tie_graph* graph, const char* path, const char* params);
/* student_a<TAB>student_b<TAB>count */
IFSNET_API ifs_status ifs_tie_graph_write_cooccurrence_tsv(const ifs_tie_graph* graph, const char* path,
                                                           const char* params);
/* src<TAB>dst<TAB>count */
IFSNET_API ifs_status ifs_tie_graph_write_directed_tsv(const ifs_tie_graph* graph, const char* path,
                                                       const char* params);
IFSNET_API size_t ifs_tie_graph_node_count(const ifs_tie_graph* graph);
IFSNET_API size_t ifs_tie_graph_undirected_edge_count(const ifs_tie_graph* graph);
IFSNET_API size_t ifs_tie_graph_directed_edge_count(const ifs_tie_graph* graph);
IFSNET_API void ifs_tie_graph_time_range(const ifs_tie_graph* graph, int64_t* first, int64_t* last);
IFSNET_API int64_t ifs_tie_graph_window(const ifs_tie_graph* graph);
IFSNET_API void ifs_tie_graph_free(ifs_tie_graph* graph);

/* ---- tie decay -------------------------------------------------------- */

IFSNET_API double ifs_alpha_from_half_life(double half_life_seconds);
IFSNET_API double ifs_default_half_life(void);
/* Decayed weight of a sorted co-occurrence time list at time t. */
IFSNET_API ifs_status ifs_edge_weight_at(const int64_t* times, size_t count, double alpha, double t, double* out);

IFSNET_API ifs_status ifs_snapshot_at(const ifs_tie_graph* graph, double alpha, double t, ifs_snapshot** out);
/* src<TAB>dst<TAB>weight with a "# t=.. alpha=.." header. */
IFSNET_API ifs_status ifs_snapshot_write_tsv(const ifs_snapshot* snapshot, double alpha, const char* path,
                                             const char* params);
IFSNET_API double ifs_snapshot_time(const ifs_snapshot* snapshot);
IFSNET_API size_t ifs_snapshot_node_count(const ifs_snapshot* snapshot);
IFSNET_API size_t ifs_snapshot_edge_count(const ifs_snapshot* snapshot);
IFSNET_API double ifs_snapshot_total_weight(const ifs_snapshot* snapshot);
IFSNET_API void ifs_snapshot_free(ifs_snapshot* snapshot);

/* Return nonzero to stop the sweep early. The snapshot is only valid during the call. */
typedef int (*ifs_snapshot_visitor)(void* user, size_t index, const ifs_snapshot* snapshot);

/* n_points equally spaced snapshots over [t_start, t_end], endpoints included. */
IFSNET_API ifs_status ifs_sample_snapshots(const ifs_tie_graph* graph, double alpha, double t_start, double t_end,
                                           size_t n_points, ifs_snapshot_visitor visit, void* user);

/* ---- PageRank --------------------------------------------------------- */

typedef struct ifs_walk_params {
    double damping;        /* lambda, default 0.85 */
    double tolerance;      /* L1, default 1e-10 */
    size_t max_iterations; /* default 1000 */
} ifs_walk_params;

IFSNET_API ifs_walk_params ifs_walk_params_default(void);
IFSNET_API ifs_status ifs_pagerank_compute(const ifs_snapshot* snapshot, const ifs_walk_params* params,
                                           ifs_pagerank** out);
IFSNET_API int ifs_pagerank_converged(const ifs_pagerank* pr);
IFSNET_API size_t ifs_pagerank_iterations(const ifs_pagerank* pr);
IFSNET_API double ifs_pagerank_residual(const ifs_pagerank* pr);
IFSNET_API size_t ifs_pagerank_size(const ifs_pagerank* pr);
/* Score of the node with the given (lexicographic) index. */
IFSNET_API double ifs_pagerank_score(const ifs_pagerank* pr, size_t index);
/* Node id at 0-based rank position (descending score); NULL out of range. */
IFSNET_API const char* ifs_pagerank_node_at_rank(const ifs_pagerank* pr, size_t rank);
/* node<TAB>score<TAB>rank */
IFSNET_API ifs_status ifs_pagerank_write_tsv(const ifs_pagerank* pr, const char* path, const char* params);
IFSNET_API void ifs_pagerank_free(ifs_pagerank* pr);

/* ---- community detection --------------------------------------------- */

typedef struct ifs_flow_params {
    double beta;              /* default 0.25 */
    uint64_t seed;            /* default 0 */
    size_t max_rounds;        /* default 100 */
    int single_hop;           /* nonzero: only origins transmit */
    int stop_on_quiet_round;  /* nonzero: stop after the first round with no new label */
} ifs_flow_params;

IFSNET_API ifs_flow_params ifs_flow_params_default(void);

IFSNET_API ifs_status ifs_detect(const ifs_snapshot* snapshot, const ifs_pagerank* pr, double epsilon,
                                 const ifs_flow_params* params, ifs_assignment** out);
IFSNET_API size_t ifs_assignment_node_count(const ifs_assignment* a);
IFSNET_API size_t ifs_assignment_community_count(const ifs_assignment* a);
IFSNET_API size_t ifs_assignment_labeled_count(const ifs_assignment* a);
/* Rounds used by detection; 0 for assignments read from files. */
IFSNET_API size_t ifs_assignment_rounds(const ifs_assignment* a);
/* Label of a student id, -1 when unlabeled or unknown. */
IFSNET_API int32_t ifs_assignment_label_of(const ifs_assignment* a, const char* student);
/* Communities JSON: {time, epsilon, beta, seed, rounds, parameters, communities, isolated}. */
IFSNET_API ifs_status ifs_assignment_write_json(const ifs_assignment* a, double time, double epsilon,
                                                const ifs_flow_params* flow, const char* path, const char* params);
IFSNET_API ifs_status ifs_assignment_write_ground_truth(const ifs_assignment* a, uint64_t seed, const char* path,
                                                        const char* params);
IFSNET_API ifs_status ifs_assignment_read_json(const char* path, ifs_assignment** out);
IFSNET_API void ifs_assignment_free(ifs_assignment* a);

/* ---- evaluation ------------------------------------------------------- */

typedef struct ifs_partition_report {
    double modularity;
    size_t community_count;
    double avg_size;
    size_t isolated_count;
} ifs_partition_report;

IFSNET_API ifs_status ifs_modularity(const ifs_snapshot* snapshot, const ifs_assignment* a, int symmetrized,
                                     double* out);
IFSNET_API ifs_status ifs_partition_report_compute(const ifs_snapshot* snapshot, const ifs_assignment* a,
                                                   int symmetrized, ifs_partition_report* out);
IFSNET_API ifs_status ifs_nmi(const ifs_assignment* a, const ifs_assignment* b, double* out);

typedef struct ifs_sweep_row {
    double epsilon;
    double modularity;
    size_t community_count;
    double avg_size;
} ifs_sweep_row;

/* rows must hold count entries. */
IFSNET_API ifs_status ifs_sweep(const ifs_snapshot* snapshot, const ifs_pagerank* pr, const double* epsilons,
                                size_t count, const ifs_flow_params* params, ifs_sweep_row* rows);

IFSNET_API ifs_status ifs_category_map_read(const char* path, ifs_category_map** out);
IFSNET_API ifs_status ifs_category_map_write(const ifs_category_map* map, const char* path);
IFSNET_API void ifs_category_map_free(ifs_category_map* map);

#define IFS_INDICATOR_COUNT 7

typedef struct ifs_variance_row {
    const char* indicator; /* static string */
    double variance_all;
    double mean_within;
    size_t communities_used;
} ifs_variance_row;

/* Behaviour indicators over spend events in [semester_begin, semester_end],
 * compared before/after grouping by the assignment. rows holds
 * IFS_INDICATOR_COUNT entries. */
IFSNET_API ifs_status ifs_variance_comparison(const ifs_event_log* log, const ifs_category_map* categories,
                                              int64_t semester_begin, int64_t semester_end, const ifs_assignment* a,
                                              ifs_variance_row* rows);

/* ---- synthetic data --------------------------------------------------- */

typedef struct ifs_synth_config {
    size_t n_students;
    size_t n_communities;
    size_t cafeterias, baths, boilers, shops;
    int64_t semester_begin, semester_end;
    double intra_rate; /* co-visits per pair per week */
    double inter_rate;
    int64_t jitter;
    int64_t window;
    uint64_t seed;
    int community_amounts;
    double base_amount;
    double amount_step;
} ifs_synth_config;

IFSNET_API ifs_synth_config ifs_synth_config_default(void);
IFSNET_API ifs_status ifs_synth_generate(const ifs_synth_config* config, ifs_event_log** log,
                                         ifs_assignment** ground_truth, ifs_category_map** categories);

#ifdef __cplusplus
}
#endif

#endif /* IFSNET_IFSNET_H */
