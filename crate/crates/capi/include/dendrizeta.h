#ifndef DENDRIZETA_H
#define DENDRIZETA_H

/* Generated with cbindgen from dendrizeta-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Basis selector for parsing.
typedef enum ZetaKind {
  ZetaPosWord = 0,
  ZetaBinWord = 1,
  ZetaAngleTree = 2,
  ZetaVertexTree = 3,
  ZetaBinaryTree = 4,
} ZetaKind;

// Product piece selector.
typedef enum ZetaPiece {
  ZetaLeft = 0,
  ZetaRight = 1,
  ZetaMiddle = 2,
  ZetaFull = 3,
} ZetaPiece;

// Result discipline of every FFI entry point.
typedef enum ZetaStatus {
  // Success.
  ZetaOk = 0,
  // Input text did not match the documented grammar.
  ZetaParseError = 1,
  // Mathematically undefined request (empty split operand, leaf product,
  // divergent input, depth or size cap).
  ZetaDomainError = 2,
  // Invalid configuration or mismatched handle kinds.
  ZetaInvalidArgument = 3,
  // A required pointer was NULL.
  ZetaNullPointer = 4,
  // Internal panic; a bug, please report it.
  ZetaPanic = 5,
} ZetaStatus;

// Opaque handle: a linear combination over one of the five basis kinds.
typedef struct ZetaExpr ZetaExpr;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Description of the most recent failure on this thread. The pointer stays
// valid until the next library call on the same thread; do not free it.
const char *zeta_last_error(void);

// Parses a basis element or a serialized linear combination of the given
// kind into a fresh handle.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum ZetaStatus zeta_parse(enum ZetaKind kind, const char *text, struct ZetaExpr **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `expr` must be a pointer previously returned by this library and not yet
// freed.
void zeta_expr_free(struct ZetaExpr *expr);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `text` must originate from this library and not be freed twice.
void zeta_string_free(char *text);

// Canonical text form of the expression.
//
// # Safety
// `expr` must be a live handle; `out` a valid pointer.
enum ZetaStatus zeta_expr_to_string(const struct ZetaExpr *expr, char **out);

// JSON form: array of `{"coeff": ..., "basis": ...}` objects.
//
// # Safety
// `expr` must be a live handle; `out` a valid pointer.
enum ZetaStatus zeta_expr_to_json(const struct ZetaExpr *expr, char **out);

// The requested product piece of two expressions of the same kind,
// extended bilinearly over their terms.
//
// # Safety
// `a` and `b` must be live handles; `out` a valid pointer.
enum ZetaStatus zeta_product(enum ZetaPiece piece,
                             const struct ZetaExpr *a,
                             const struct ZetaExpr *b,
                             struct ZetaExpr **out);

// Flattens vertex trees to positive words, or binary trees to binary
// words.
//
// # Safety
// `expr` must be a live handle; `out` a valid pointer.
enum ZetaStatus zeta_flatten(const struct ZetaExpr *expr, struct ZetaExpr **out);

// Sums angle decorations into vertex decorations (angle trees only).
//
// # Safety
// `expr` must be a live handle; `out` a valid pointer.
enum ZetaStatus zeta_iota(const struct ZetaExpr *expr, struct ZetaExpr **out);

// The binarization map on positive words, extended linearly.
//
// # Safety
// `expr` must be a live handle; `out` a valid pointer.
enum ZetaStatus zeta_binarize(const struct ZetaExpr *expr, struct ZetaExpr **out);

// Evaluates the expression through the truncated-series route. Accepts
// positive words, vertex trees (flattened first) and binary trees (through
// the binarization inverse). `out_tail` receives a rigorous tail
// overestimate when one is available, `-1.0` otherwise.
//
// # Safety
// `expr` must be a live handle; `out_value` and `out_tail` valid pointers.
enum ZetaStatus zeta_eval_series(const struct ZetaExpr *expr,
                                 uint64_t cutoff,
                                 double *out_value,
                                 double *out_tail);

// Evaluates a binary-word expression by simplex quadrature.
//
// # Safety
// `expr` must be a live handle; `out_value` a valid pointer.
enum ZetaStatus zeta_eval_quad(const struct ZetaExpr *expr,
                               size_t nodes_per_axis,
                               double *out_value);

// Shintani datum of a single convergent binary tree, serialized as JSON
// (matrix, omega, row and column labels).
//
// # Safety
// `expr` must be a live handle; `out` a valid pointer.
enum ZetaStatus zeta_shintani_matrix(const struct ZetaExpr *expr, char **out);

// Truncated Shintani sum of a single convergent binary tree.
//
// # Safety
// `expr` must be a live handle; `out_value` a valid pointer.
enum ZetaStatus zeta_shintani_eval(const struct ZetaExpr *expr, uint64_t cutoff, double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DENDRIZETA_H */
