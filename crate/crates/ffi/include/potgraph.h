#ifndef POTGRAPH_H
#define POTGRAPH_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum PgStatus {
  PG_STATUS_OK = 0,
  PG_STATUS_NULL_POINTER = 1,
  PG_STATUS_INVALID_INPUT = 2,
  PG_STATUS_NOT_GRAPHICAL = 3,
  PG_STATUS_INVALID_MOVE = 4,
  PG_STATUS_BUDGET_EXCEEDED = 5,
  PG_STATUS_PRECONDITION = 6,
  // Cycle extension visited every realization without success.
  PG_STATUS_EXTENSION_EXHAUSTED = 7,
  // The output buffer is shorter than the reported required length.
  PG_STATUS_BUFFER_TOO_SMALL = 8,
  // The requested optional value is absent.
  PG_STATUS_NOT_FOUND = 9,
  // A Rust panic was caught at the boundary.
  PG_STATUS_PANIC = 10,
} PgStatus;

typedef enum PgPatternKind {
  PG_PATTERN_KIND_CYCLE = 0,
  PG_PATTERN_KIND_CLIQUE = 1,
  PG_PATTERN_KIND_MATCHING = 2,
} PgPatternKind;

typedef enum PgAnswer {
  PG_ANSWER_YES = 0,
  PG_ANSWER_NO = 1,
  PG_ANSWER_UNKNOWN = 2,
} PgAnswer;

// Opaque graph handle.
typedef struct PgGraph PgGraph;

// Opaque degree sequence handle.
typedef struct PgSequence PgSequence;

// Opaque oracle result handle.
typedef struct PgSigmaRecord PgSigmaRecord;

// C_k, K_k or pK_2, with `size` being k or p.
typedef struct PgPattern {
  enum PgPatternKind kind;
  uint32_t size;
} PgPattern;

// Search caps. Pass a null pointer wherever a budget is accepted to use the
// library defaults.
typedef struct PgBudget {
  uint64_t max_states;
  uint64_t max_moves;
} PgBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null; do not free.
const char *pg_status_message(enum PgStatus status);

// Message for the most recent failure on this thread (empty after a
// success), NUL-terminated.
enum PgStatus pg_last_error(char *buf, size_t cap, size_t *needed);

// Builds a sequence from `len` terms, sorting them nonincreasing.
enum PgStatus pg_sequence_new(const int64_t *terms, size_t len, struct PgSequence **out);

// Parses text such as "3,3,2,2,2" or "(3 3 2 2 2)".
enum PgStatus pg_sequence_parse(const char *text, struct PgSequence **out);

void pg_sequence_free(struct PgSequence *s);

enum PgStatus pg_sequence_len(const struct PgSequence *s, size_t *out);

// Copies the terms (nonincreasing) into `buf`.
enum PgStatus pg_sequence_terms(const struct PgSequence *s,
                                uint32_t *buf,
                                size_t cap,
                                size_t *needed);

enum PgStatus pg_sequence_sum(const struct PgSequence *s, uint64_t *out);

enum PgStatus pg_sequence_is_graphical(const struct PgSequence *s, bool *out);

// One realization; vertex i receives the i-th term.
enum PgStatus pg_sequence_realize(const struct PgSequence *s, struct PgGraph **out);

// Edgeless graph on `n` vertices (at most 32).
enum PgStatus pg_graph_new(size_t n, struct PgGraph **out);

enum PgStatus pg_graph_clone(const struct PgGraph *g, struct PgGraph **out);

void pg_graph_free(struct PgGraph *g);

enum PgStatus pg_graph_order(const struct PgGraph *g, size_t *out);

enum PgStatus pg_graph_edge_count(const struct PgGraph *g, size_t *out);

enum PgStatus pg_graph_add_edge(struct PgGraph *g, size_t u, size_t v);

enum PgStatus pg_graph_remove_edge(struct PgGraph *g, size_t u, size_t v);

enum PgStatus pg_graph_has_edge(const struct PgGraph *g, size_t u, size_t v, bool *out);

enum PgStatus pg_graph_degree(const struct PgGraph *g, size_t v, size_t *out);

enum PgStatus pg_graph_degree_sequence(const struct PgGraph *g, struct PgSequence **out);

enum PgStatus pg_graph_contains(const struct PgGraph *g, struct PgPattern h, bool *out);

// Applies the 2-switch removing `ab`, `cd` and inserting `ac`, `bd` in place.
enum PgStatus pg_graph_two_switch(struct PgGraph *g, size_t a, size_t b, size_t c, size_t d);

// Extends the cycle `cycle[0..len]` of `g` by one vertex. On success
// `out_graph` receives the new realization and `out_cycle` (capacity at least
// `len + 1`) the new cycle.
enum PgStatus pg_extend_cycle(const struct PgGraph *g,
                              const size_t *cycle,
                              size_t len,
                              size_t x,
                              size_t w,
                              const struct PgBudget *limits,
                              struct PgGraph **out_graph,
                              size_t *out_cycle);

// Does some realization of `s` contain `h`? With a non-null `witness`, a
// containing realization is returned on `Yes` (null otherwise).
enum PgStatus pg_is_potentially(const struct PgSequence *s,
                                struct PgPattern h,
                                const struct PgBudget *limits,
                                enum PgAnswer *answer,
                                struct PgGraph **witness);

// Does every realization of `s` contain `h`? With a non-null `witness`, an
// avoiding realization is returned on `No` (null otherwise).
enum PgStatus pg_is_forcibly(const struct PgSequence *s,
                             struct PgPattern h,
                             const struct PgBudget *limits,
                             enum PgAnswer *answer,
                             struct PgGraph **witness);

// Brute-force σ(h, n). `jobs = 0` uses every available core.
enum PgStatus pg_sigma_oracle(struct PgPattern h,
                              size_t n,
                              const struct PgBudget *limits,
                              size_t jobs,
                              struct PgSigmaRecord **out);

void pg_record_free(struct PgSigmaRecord *r);

// Writes σ to `value`; `impossible` is set when H has more vertices than n
// (and `value` is then 0).
enum PgStatus pg_record_sigma(const struct PgSigmaRecord *r, uint64_t *value, bool *impossible);

// True when no sequence was left undecided by the budget.
enum PgStatus pg_record_is_certified(const struct PgSigmaRecord *r, bool *out);

enum PgStatus pg_record_counts(const struct PgSigmaRecord *r,
                               uint64_t *sequences_checked,
                               uint64_t *unknown);

// The extremal sequence, or `NotFound` when there is none.
enum PgStatus pg_record_witness(const struct PgSigmaRecord *r, struct PgSequence **out);

// The record as JSON, NUL-terminated; `needed` counts the NUL.
enum PgStatus pg_record_to_json(const struct PgSigmaRecord *r,
                                char *buf,
                                size_t cap,
                                size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POTGRAPH_H */
