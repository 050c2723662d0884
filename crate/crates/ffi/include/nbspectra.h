#ifndef NBSPECTRA_H
#define NBSPECTRA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NbsStatus {
  NBS_STATUS_OK = 0,
  NBS_STATUS_NULL_POINTER = 1,
  NBS_STATUS_PARSE = 2,
  NBS_STATUS_ARGUMENT = 3,
  NBS_STATUS_CAPABILITY = 4,
  NBS_STATUS_PRECONDITION = 5,
  NBS_STATUS_NUMERIC = 6,
  NBS_STATUS_IO = 7,
  // A panic was caught at the boundary.
  NBS_STATUS_INTERNAL = 8,
} NbsStatus;

// Operator selector for [`nbs_spectrum_new`].
typedef enum NbsOperator {
  NBS_OPERATOR_ADJACENCY = 0,
  NBS_OPERATOR_NORMALIZED_LAPLACIAN = 1,
  NBS_OPERATOR_NB_MATRIX = 2,
  NBS_OPERATOR_NB_LAPLACIAN = 3,
} NbsOperator;

// Opaque simple graph.
typedef struct NbsGraph NbsGraph;

// Opaque clustered spectrum.
typedef struct NbsSpectrum NbsSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *nbs_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void nbs_string_free(char *s);

// # Safety
// `text` must be a nul-terminated string and `out` writable.
enum NbsStatus nbs_graph_from_graph6(const char *text, struct NbsGraph **out);

// Family spec such as `petal:2,3`, `cycle:5`, `complete:4`.
//
// # Safety
// `spec` must be a nul-terminated string and `out` writable.
enum NbsStatus nbs_graph_from_family(const char *spec, struct NbsGraph **out);

// `edges` holds `m` pairs `u0 v0 u1 v1 ...` of 0-based vertex ids.
//
// # Safety
// `edges` must point to `2 * m` readable values (or be NULL when `m == 0`)
// and `out` must be writable.
enum NbsStatus nbs_graph_from_edges(size_t n, const size_t *edges, size_t m, struct NbsGraph **out);

// # Safety
// `g` must be NULL or a handle from this library, freed at most once.
void nbs_graph_free(struct NbsGraph *g);

// Vertex and edge counts.
//
// # Safety
// Pointers must be valid.
enum NbsStatus nbs_graph_size(const struct NbsGraph *g, size_t *n, size_t *m);

// # Safety
// Pointers must be valid; release `*out` with [`nbs_string_free`].
enum NbsStatus nbs_graph_to_graph6(const struct NbsGraph *g, char **out);

// Vertex and arc counts of the NB graph.
//
// # Safety
// Pointers must be valid.
enum NbsStatus nbs_nb_size(const struct NbsGraph *g, size_t *vertices, size_t *arcs);

// NB graph as JSON `{"vertices": [[v,w],...], "arcs": [[i,j],...]}`.
//
// # Safety
// Pointers must be valid; release `*out` with [`nbs_string_free`].
enum NbsStatus nbs_nb_json(const struct NbsGraph *g, char **out);

// # Safety
// Pointers must be valid.
enum NbsStatus nbs_spectrum_new(const struct NbsGraph *g,
                                enum NbsOperator op,
                                double tol,
                                struct NbsSpectrum **out);

// # Safety
// `s` must be NULL or a handle from this library, freed at most once.
void nbs_spectrum_free(struct NbsSpectrum *s);

// Number of distinct eigenvalue clusters; 0 for NULL.
//
// # Safety
// `s` must be NULL or a valid handle.
size_t nbs_spectrum_len(const struct NbsSpectrum *s);

// Cluster `i`, ordered by real then imaginary part.
//
// # Safety
// Pointers must be valid.
enum NbsStatus nbs_spectrum_get(const struct NbsSpectrum *s,
                                size_t i,
                                double *re,
                                double *im,
                                size_t *mult);

// `min |1 - lambda|` over the NB Laplacian spectrum.
//
// # Safety
// Pointers must be valid.
enum NbsStatus nbs_spectral_gap(const struct NbsGraph *g, double tol, double *out);

// Largest `k` admitting a circular k-partition.
//
// # Safety
// Pointers must be valid.
enum NbsStatus nbs_partite_max_k(const struct NbsGraph *g, size_t *out);

// Out- and strong out-independence numbers of the NB graph.
//
// # Safety
// Pointers must be valid.
enum NbsStatus nbs_independence(const struct NbsGraph *g, size_t *alpha_out, size_t *alpha_s_out);

// Runs the check suite; `*passed` is 1 iff no check failed. `json` may be
// NULL, otherwise it receives the report.
//
// # Safety
// Pointers must be valid; release `*json` with [`nbs_string_free`].
enum NbsStatus nbs_verify(const struct NbsGraph *g, double tol, int *passed, char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NBSPECTRA_H */
