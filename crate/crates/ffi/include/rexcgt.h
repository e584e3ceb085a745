/* C interface to the rexcgt engine. Generated by cbindgen; do not edit. */

#ifndef REXCGT_H
#define REXCGT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by all fallible entry points.
 */
typedef enum RexStatus {
  RexOk = 0,
  RexInputError = 1,
  RexBudgetExceeded = 2,
  RexPreconditionViolation = 3,
  RexInternalError = 4,
  RexNullPointer = 5,
} RexStatus;

typedef struct RexGame RexGame;

typedef struct RexPoset RexPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *rexcgt_version(void);

/**
 * Message of the most recent error on this thread, or null. The caller
 * frees the result with `rexcgt_string_free`.
 */
char *rexcgt_last_error(void);

/**
 * # Safety
 * `s` must be a string returned by this library and not yet freed.
 */
void rexcgt_string_free(char *s);

/**
 * One of the builtin posets: "one", "bool", "chain3", "diamond".
 * Returns null for unknown names.
 *
 * # Safety
 * `name` must be a valid nul-terminated C string.
 */
struct RexPoset *rexcgt_poset_builtin(const char *name);

/**
 * Parse the `poset`/`elems`/`le` text format.
 *
 * # Safety
 * `text` must be a valid nul-terminated C string.
 */
struct RexPoset *rexcgt_poset_parse(const char *text);

/**
 * # Safety
 * `p` must be a live poset handle from this library.
 */
char *rexcgt_poset_serialize(const struct RexPoset *p);

/**
 * # Safety
 * `p` must be a live poset handle; `a` and `b` nul-terminated strings;
 * `out` a valid bool location.
 */
enum RexStatus rexcgt_poset_leq(const struct RexPoset *p, const char *a, const char *b, bool *out);

/**
 * # Safety
 * `p` must be a handle from this library, freed at most once.
 */
void rexcgt_poset_free(struct RexPoset *p);

/**
 * Parse a game expression whose atoms resolve against `p`.
 *
 * # Safety
 * `p` must be a live poset handle and `expr` a nul-terminated string.
 */
struct RexGame *rexcgt_game_parse(const struct RexPoset *p, const char *expr);

/**
 * # Safety
 * `g` must be a live game handle.
 */
char *rexcgt_game_serialize(const struct RexGame *g);

/**
 * The poset a game is played over, as a fresh handle.
 *
 * # Safety
 * `g` must be a live game handle.
 */
struct RexPoset *rexcgt_game_poset(const struct RexGame *g);

/**
 * # Safety
 * `a` and `b` must be live game handles.
 */
struct RexGame *rexcgt_game_sum(const struct RexGame *a, const struct RexGame *b);

/**
 * # Safety
 * `g` must be a live game handle.
 */
struct RexGame *rexcgt_game_dual(const struct RexGame *g);

/**
 * Parity: 0 even, 1 odd, 2 none, -1 on a null handle.
 *
 * # Safety
 * `g` must be a live game handle.
 */
int32_t rexcgt_game_parity(const struct RexGame *g);

/**
 * # Safety
 * `a`, `b` must be live game handles and `out` a valid bool location.
 */
enum RexStatus rexcgt_game_leq(const struct RexGame *a, const struct RexGame *b, bool *out);

/**
 * # Safety
 * `a`, `b` must be live game handles and `out` a valid bool location.
 */
enum RexStatus rexcgt_game_tri(const struct RexGame *a, const struct RexGame *b, bool *out);

/**
 * Outcome class of a game over bool, written to `out` as one of
 * 'L', 'N', 'P', 'R'.
 *
 * # Safety
 * `g` must be a live game handle and `out` a valid char location.
 */
enum RexStatus rexcgt_game_outcome(const struct RexGame *g, char *out);

/**
 * # Safety
 * `g` must be a live game handle and `out` a valid bool location.
 */
enum RexStatus rexcgt_game_is_premotive(const struct RexGame *g, bool *out);

/**
 * # Safety
 * `g` must be a live game handle and `out` a valid bool location.
 */
enum RexStatus rexcgt_game_is_star_antimonotone(const struct RexGame *g, bool *out);

/**
 * Canonical form of a premotive parity game, or null on refusal.
 * `budget` of 0 selects the default node budget.
 *
 * # Safety
 * `g` must be a live game handle.
 */
struct RexGame *rexcgt_game_canonical(const struct RexGame *g, uint64_t budget);

/**
 * # Safety
 * `g` must be a handle from this library, freed at most once.
 */
void rexcgt_game_free(struct RexGame *g);

/**
 * The game form of a board position over bool. `budget` of 0 selects
 * the default node budget.
 *
 * # Safety
 * `board_text` must be a valid nul-terminated C string.
 */
struct RexGame *rexcgt_board_game(const char *board_text, uint64_t budget);

/**
 * Outcome class of a board by exhaustive play, written to `out` as one
 * of 'L', 'N', 'P', 'R'.
 *
 * # Safety
 * `board_text` must be a nul-terminated string and `out` a valid char
 * location.
 */
enum RexStatus rexcgt_board_outcome(const char *board_text, uint64_t budget, char *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REXCGT_H */
