#ifndef SUBSYSTEM_CODES_H
#define SUBSYSTEM_CODES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ScDistanceState {
  SC_DISTANCE_STATE_EXACT = 0,
  // `value` is a certified lower bound.
  SC_DISTANCE_STATE_LOWER_BOUND = 1,
  // The searched set is empty; `value` is 0.
  SC_DISTANCE_STATE_EMPTY = 2,
} ScDistanceState;

// Result of every fallible call.
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  SC_STATUS_INVALID_INPUT = 2,
  // The code was built but carries no logical qudits (K = 1).
  SC_STATUS_DEGENERATE = 3,
  // A hypothesis of the requested construction or bound is not met.
  SC_STATUS_HYPOTHESIS = 4,
  SC_STATUS_INTERNAL = 5,
} ScStatus;

// An additive code read from the code file format.
typedef struct ScCode ScCode;

// A subsystem code with its computed parameters.
typedef struct ScSubsystem ScSubsystem;

typedef struct ScDistance {
  uint32_t value;
  enum ScDistanceState state;
} ScDistance;

typedef struct ScParams {
  uint32_t n;
  uint32_t q;
  // K = p^log_p_k.
  uint32_t log_p_k;
  // R = p^log_p_r.
  uint32_t log_p_r;
  uint32_t p;
  struct ScDistance d;
  struct ScDistance d_prime;
  // 1 pure, 0 impure, -1 undecided at the chosen caps.
  int32_t pure_code;
} ScParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *sc_last_error_message(void);

// Parses a NUL-terminated code file into a new handle.
//
// # Safety
// `text` must be a valid C string and `out` a valid pointer.
enum ScStatus sc_code_parse(const char *text, struct ScCode **out);

// Serializes a code; release the string with `sc_string_free`.
//
// # Safety
// `code` must come from `sc_code_parse`; `out` must be valid.
enum ScStatus sc_code_write(const struct ScCode *code, char **out);

// # Safety
// `code` must come from `sc_code_parse` and not be used afterwards.
void sc_code_free(struct ScCode *code);

// # Safety
// `s` must come from this library and not be used afterwards.
void sc_string_free(char *s);

// Minimum weight of the code in its natural metric. `cap` = 0 searches
// exhaustively; otherwise weights below `cap` are searched.
//
// # Safety
// `code` must come from `sc_code_parse`; `out` must be valid.
enum ScStatus sc_code_min_distance(const struct ScCode *code, uint32_t cap, struct ScDistance *out);

// Subsystem code defined by X (symplectic or over GF(q²)). `cap` bounds
// both the distance and the purity searches as in `sc_code_min_distance`.
// A degenerate code (K = 1) is still returned, with status `Degenerate`.
//
// # Safety
// `x` must come from `sc_code_parse`; `out` must be valid.
enum ScStatus sc_subsystem_from_code(const struct ScCode *x,
                                     uint32_t cap,
                                     struct ScSubsystem **out);

// # Safety
// `code` must come from `sc_subsystem_from_code`; `out` must be valid.
enum ScStatus sc_subsystem_params(const struct ScSubsystem *code, struct ScParams *out);

// Flat `key: value` report of the code; release with `sc_string_free`.
//
// # Safety
// `code` must come from `sc_subsystem_from_code`; `out` must be valid.
enum ScStatus sc_subsystem_report(const struct ScSubsystem *code, char **out);

// # Safety
// `code` must come from `sc_subsystem_from_code` and not be used afterwards.
void sc_subsystem_free(struct ScSubsystem *code);

// Sets `*infeasible` to 1 when the LP bound rules out [[n,k,r,d]]_q.
//
// # Safety
// `infeasible` must be valid.
enum ScStatus sc_bounds_lp(uint32_t n,
                           uint32_t k,
                           uint32_t r,
                           uint32_t d,
                           uint32_t q,
                           int32_t *infeasible);

// Sets `*exists` to 1 when the counting bound guarantees [[n,k,r,≥d]]_q.
//
// # Safety
// `exists` must be valid.
enum ScStatus sc_bounds_gv(uint32_t n,
                           uint32_t k,
                           uint32_t r,
                           uint32_t d,
                           uint32_t q,
                           int32_t *exists);

// Sets `*violated` to 1 when a pure [[n,k,r,d]]_q code would break
// k + r ≤ n − 2d + 2.
//
// # Safety
// `violated` must be valid.
enum ScStatus sc_bounds_pure_singleton(uint32_t n,
                                       uint32_t k,
                                       uint32_t r,
                                       uint32_t d,
                                       uint32_t q,
                                       int32_t *violated);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBSYSTEM_CODES_H */
