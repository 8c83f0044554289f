#ifndef VERONESE_FSIG_H
#define VERONESE_FSIG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status of an FFI call.
typedef enum {
  VFSIG_STATUS_OK = 0,
  // A verified identity failed or an experimental consistency check
  // rejected its own output.
  VFSIG_STATUS_VERIFICATION_FAILED = 1,
  VFSIG_STATUS_INVALID_INPUT = 2,
  VFSIG_STATUS_GUARD_EXCEEDED = 3,
  VFSIG_STATUS_NULL_POINTER = 4,
  // An internal invariant was violated; a bug, not a usage error.
  VFSIG_STATUS_INTERNAL_ERROR = 5,
} VfsigStatus;

// Opaque handle to a surjection chain.
typedef struct VfsigChain VfsigChain;

// Opaque handle to a root-module decomposition.
typedef struct VfsigDecomposition VfsigDecomposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *vfsig_version(void);

// Message of the most recent error on this thread, or an empty string.
// The returned string must be released with [`vfsig_string_free`].
char *vfsig_last_error_message(void);

// Release a string allocated by this library. NULL is ignored.
//
// # Safety
// `s` must be a pointer previously returned by a `vfsig_*` function and not
// yet freed.
void vfsig_string_free(char *s);

// Decompose the `p^e`-th root module of a graded class into class summands.
// `source_class < 0` selects the canonical class. When `p` divides `d` the
// experimental literal-reading path is used and the handle reports it.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
VfsigStatus vfsig_decompose(uint32_t n,
                            uint32_t d,
                            uint64_t p,
                            uint32_t e,
                            int64_t source_class,
                            VfsigDecomposition **out);

// Number of classes (`d`) in a decomposition; 0 for NULL.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
uint32_t vfsig_decomposition_class_count(const VfsigDecomposition *handle);

// Multiplicity of one class as a decimal string, or NULL when the handle is
// NULL or the index is out of range.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
char *vfsig_decomposition_multiplicity(const VfsigDecomposition *handle, uint32_t class_index);

// Sum of all multiplicities as a decimal string.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
char *vfsig_decomposition_total(const VfsigDecomposition *handle);

// `p^{ne}` as a decimal string.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
char *vfsig_decomposition_rank(const VfsigDecomposition *handle);

// True when the decomposition came from the experimental `p | d` path.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
bool vfsig_decomposition_is_experimental(const VfsigDecomposition *handle);

// Release a decomposition handle. NULL is ignored.
//
// # Safety
// `handle` must come from [`vfsig_decompose`] and not be freed twice.
void vfsig_decomposition_free(VfsigDecomposition *handle);

// Splitting number `a_e` as a decimal string. Requires gcd(p, d) = 1.
//
// # Safety
// `out` must be a valid pointer to a string slot.
VfsigStatus vfsig_splitting_number(uint32_t n, uint32_t d, uint64_t p, uint32_t e, char **out);

// F-signature estimate `a_e / p^{ne}` as an exact `num/den` string.
//
// # Safety
// `out` must be a valid pointer to a string slot.
VfsigStatus vfsig_f_signature(uint32_t n, uint32_t d, uint64_t p, uint32_t e, char **out);

// The closed form the exact bounds converge to, `ceil(n/d)/n`.
//
// # Safety
// `out` must be a valid pointer to a string slot.
VfsigStatus vfsig_closed_form_limit(uint32_t n, uint32_t d, char **out);

// The alternative closed form `ceil(d/n)/d`.
//
// # Safety
// `out` must be a valid pointer to a string slot.
VfsigStatus vfsig_closed_form_alt(uint32_t n, uint32_t d, char **out);

// Whether the two closed forms coincide for `(n, d)`.
//
// # Safety
// `out` must be a valid pointer to a bool slot.
VfsigStatus vfsig_closed_forms_agree(uint32_t n, uint32_t d, bool *out);

// Build the chain of optimal surjections onto the canonical class.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
VfsigStatus vfsig_chain_new(uint32_t n, uint32_t d, VfsigChain **out);

// Number of chain records (`k + 1`); 0 for NULL.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
uint32_t vfsig_chain_length(const VfsigChain *handle);

// Index of the canonical class.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
uint32_t vfsig_chain_canonical_class(const VfsigChain *handle);

// Source copy count `e_i` of record `i` as a decimal string.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
char *vfsig_chain_source_copies(const VfsigChain *handle, uint32_t i);

// Target copy count `f_i` of record `i` as a decimal string.
//
// # Safety
// `handle` must be NULL or a live handle from this library.
char *vfsig_chain_target_copies(const VfsigChain *handle, uint32_t i);

// Release a chain handle. NULL is ignored.
//
// # Safety
// `handle` must come from [`vfsig_chain_new`] and not be freed twice.
void vfsig_chain_free(VfsigChain *handle);

// Span check on the maximal minors of the band matrix `M(n, r)`.
// `max_minors = 0` selects the built-in default cap.
//
// # Safety
// The three out-pointers must be valid.
VfsigStatus vfsig_verify_minors(uint32_t n,
                                uint32_t r,
                                uint64_t max_minors,
                                bool *out_holds,
                                uint64_t *out_rank,
                                uint64_t *out_expected);

// Rank test of the degree-`j` component of the band map with `k` rows on
// `n` variables. `max_dim = 0` selects the built-in default cap.
//
// # Safety
// The three out-pointers must be valid.
VfsigStatus vfsig_surjective_in_degree(uint32_t n,
                                       uint32_t k,
                                       uint32_t j,
                                       uint64_t max_dim,
                                       bool *out_surjective,
                                       uint64_t *out_rank,
                                       uint64_t *out_required);

// Full signature convergence table for `e = 1..e_max`, serialized as the
// same JSON document the CLI emits (schema_version 1). The returned string
// must be released with [`vfsig_string_free`].
//
// # Safety
// `out` must be a valid pointer to a string slot.
VfsigStatus vfsig_signature_table_json(uint32_t n,
                                       uint32_t d,
                                       uint64_t p,
                                       uint32_t e_max,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VERONESE_FSIG_H */
