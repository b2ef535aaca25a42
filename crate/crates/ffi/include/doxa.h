#ifndef DOXA_H
#define DOXA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum DoxaStatus {
  DOXA_STATUS_OK = 0,
  DOXA_STATUS_NULL_POINTER = 1,
  DOXA_STATUS_INVALID_UTF8 = 2,
  DOXA_STATUS_PARSE = 3,
  DOXA_STATUS_INCONSISTENT_REVISION = 4,
  DOXA_STATUS_BOUND_EXCEEDED = 5,
  DOXA_STATUS_INVALID_ALPHABET = 6,
  DOXA_STATUS_INVALID_STATE = 7,
  DOXA_STATUS_INDEX_OUT_OF_RANGE = 8,
  DOXA_STATUS_UNSUPPORTED_OPERATOR = 9,
  DOXA_STATUS_ALPHABET_OVERLAP = 10,
  DOXA_STATUS_PANIC = 11,
} DoxaStatus;

/**
 * Propositional alphabet handle.
 */
typedef struct DoxaAlphabet DoxaAlphabet;

/**
 * Revision sequence handle, bound to an alphabet.
 */
typedef struct DoxaSequence DoxaSequence;

/**
 * Doxastic state handle.
 */
typedef struct DoxaState DoxaState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next library call on the same thread.
 */
const char *doxa_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void doxa_string_free(char *s);

/**
 * Creates an alphabet from whitespace-separated variable names.
 *
 * # Safety
 * `names` must be a valid C string; `out` must be writable.
 */
enum DoxaStatus doxa_alphabet_new(const char *names, struct DoxaAlphabet **out);

/**
 * # Safety
 * `alphabet` must be null or a handle from [`doxa_alphabet_new`], not yet freed.
 */
void doxa_alphabet_free(struct DoxaAlphabet *alphabet);

/**
 * The flat state over `alphabet`.
 *
 * # Safety
 * `alphabet` must be a live handle; `out` must be writable.
 */
enum DoxaStatus doxa_state_flat(const struct DoxaAlphabet *alphabet, struct DoxaState **out);

/**
 * The two-class state `[F, ~F]`.
 *
 * # Safety
 * `alphabet` must be a live handle, `formula` a valid C string, `out` writable.
 */
enum DoxaStatus doxa_state_from_formula(const struct DoxaAlphabet *alphabet,
                                        const char *formula,
                                        struct DoxaState **out);

/**
 * # Safety
 * `state` must be null or a live state handle.
 */
void doxa_state_free(struct DoxaState *state);

/**
 * Revises `state` by `formula` with the operator named `op` (`lex`, `nat`,
 * `sev`, `msev`, `dsev`, `res`, `vrad` or `full`) into a new state.
 *
 * # Safety
 * `state` must be a live handle, `op` and `formula` valid C strings, `out` writable.
 */
enum DoxaStatus doxa_state_revise(const struct DoxaState *state,
                                  const char *op,
                                  const char *formula,
                                  struct DoxaState **out);

/**
 * Renders the state as `[ {a}, {a,b} | {}, {b} ]`. Free the result with
 * [`doxa_string_free`].
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum DoxaStatus doxa_state_render(const struct DoxaState *state, char **out);

/**
 * Number of classes of the state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum DoxaStatus doxa_state_class_count(const struct DoxaState *state, size_t *out);

/**
 * Whether two states order the models identically.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum DoxaStatus doxa_state_equal(const struct DoxaState *a, const struct DoxaState *b, bool *out);

/**
 * Compares two models given as `{a,c}` literals: writes -1 if `i` is
 * strictly more believed, 0 if equivalent, 1 otherwise.
 *
 * # Safety
 * `state` must be a live handle, `i` and `j` valid C strings, `out` writable.
 */
enum DoxaStatus doxa_state_compare(const struct DoxaState *state,
                                   const char *i,
                                   const char *j,
                                   int32_t *out);

/**
 * An empty revision sequence over `alphabet`.
 *
 * # Safety
 * `alphabet` must be a live handle; `out` must be writable.
 */
enum DoxaStatus doxa_sequence_new(const struct DoxaAlphabet *alphabet, struct DoxaSequence **out);

/**
 * # Safety
 * `seq` must be null or a live sequence handle.
 */
void doxa_sequence_free(struct DoxaSequence *seq);

/**
 * Appends a revision step.
 *
 * # Safety
 * `seq` must be a live handle; `op` and `formula` valid C strings.
 */
enum DoxaStatus doxa_sequence_push(struct DoxaSequence *seq, const char *op, const char *formula);

/**
 * Applies the whole sequence to `state`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum DoxaStatus doxa_sequence_apply(const struct DoxaSequence *seq,
                                    const struct DoxaState *state,
                                    struct DoxaState **out);

/**
 * Whether step `index` (0-based) of the sequence is redundant from `state`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum DoxaStatus doxa_sequence_redundant(const struct DoxaSequence *seq,
                                        const struct DoxaState *state,
                                        size_t index,
                                        bool *out);

/**
 * Whether `lex(first)` is redundant before `lex(second)` from the flat
 * state, for Horn clause lists (`;` or newline separated).
 *
 * # Safety
 * `first` and `second` must be valid C strings; `out` must be writable.
 */
enum DoxaStatus doxa_horn_redundant(const char *first, const char *second, bool *out);

/**
 * Whether the Horn clause list `first` is equivalent to the negation of
 * `second`.
 *
 * # Safety
 * `first` and `second` must be valid C strings; `out` must be writable.
 */
enum DoxaStatus doxa_horn_neg_equiv(const char *first, const char *second, bool *out);

/**
 * Runs a scenario given as text and writes its output. Free the result with
 * [`doxa_string_free`].
 *
 * # Safety
 * `scenario` must be a valid C string; `out` must be writable.
 */
enum DoxaStatus doxa_scenario_run(const char *scenario, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOXA_H */
