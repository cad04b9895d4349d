#ifndef CUBE_ORIENT_H
#define CUBE_ORIENT_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum CubeStatus {
  CUBE_STATUS_OK = 0,
  CUBE_STATUS_NULL_POINTER = 1,
  CUBE_STATUS_INVALID_INPUT = 2,
  CUBE_STATUS_DIM_OUT_OF_RANGE = 3,
  CUBE_STATUS_NOT_EULERIAN = 4,
  CUBE_STATUS_INFEASIBLE = 5,
  CUBE_STATUS_LENGTH_MISMATCH = 6,
  CUBE_STATUS_PARSE = 7,
  CUBE_STATUS_OVERFLOW = 8,
  CUBE_STATUS_BUFFER_TOO_SMALL = 9,
  CUBE_STATUS_PANIC = 10,
} CubeStatus;

/**
 * Opaque orientation handle.
 */
typedef struct CubeOrientation CubeOrientation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (NUL
 * terminated, truncated to `cap`). Returns the full message length
 * excluding the terminator, or 0 when there is no pending error.
 */
size_t cube_last_error_message(char *buf, size_t cap);

/**
 * Eulerian orientation of `Q_d` following an Euler circuit (`d` even).
 */
enum CubeStatus cube_orientation_euler_tour(uint32_t d, struct CubeOrientation **out);

/**
 * Eulerian orientation after `steps` seeded random cycle reversals.
 */
enum CubeStatus cube_orientation_random_eulerian(uint32_t d,
                                                 uint64_t seed,
                                                 uint64_t steps,
                                                 struct CubeOrientation **out);

/**
 * The recursive strongly `k`-node connected orientation of `Q_{2k}`.
 */
enum CubeStatus cube_orientation_inductive(uint32_t k, struct CubeOrientation **out);

/**
 * Decodes the packed edge-direction bit stream of `Q_d`.
 */
enum CubeStatus cube_orientation_from_bytes(uint32_t d,
                                            const uint8_t *bytes,
                                            size_t len,
                                            struct CubeOrientation **out);

/**
 * Parses a `CUBEORIENT v1` document.
 */
enum CubeStatus cube_orientation_from_text(const char *text, struct CubeOrientation **out);

void cube_orientation_free(struct CubeOrientation *h);

enum CubeStatus cube_orientation_clone(const struct CubeOrientation *h,
                                       struct CubeOrientation **out);

/**
 * Dimension of the cube, or 0 for a null handle.
 */
uint32_t cube_orientation_dim(const struct CubeOrientation *h);

/**
 * Serialized length in bytes, or 0 for a null handle.
 */
size_t cube_orientation_byte_len(const struct CubeOrientation *h);

/**
 * Writes the packed bit stream into `buf`. `written` receives the required
 * length even when `cap` is too small.
 */
enum CubeStatus cube_orientation_to_bytes(const struct CubeOrientation *h,
                                          uint8_t *buf,
                                          size_t cap,
                                          size_t *written);

/**
 * `CUBEORIENT v1` text for the orientation; NULL on error. Free with
 * `cube_string_free`.
 */
char *cube_orientation_to_text(const struct CubeOrientation *h);

void cube_string_free(char *s);

enum CubeStatus cube_orientation_is_eulerian(const struct CubeOrientation *h, bool *out);

enum CubeStatus cube_orientation_is_smooth(const struct CubeOrientation *h, bool *out);

/**
 * Whether the arc `u -> v` is present.
 */
enum CubeStatus cube_orientation_has_arc(const struct CubeOrientation *h,
                                         uint32_t u,
                                         uint32_t v,
                                         bool *out);

/**
 * Strong connectivity after deleting the `deleted_len` nodes in `deleted`.
 */
enum CubeStatus cube_orientation_strongly_connected(const struct CubeOrientation *h,
                                                    const uint32_t *deleted,
                                                    size_t deleted_len,
                                                    bool *out);

/**
 * Verdict of the exhaustive strong `k`-node connectivity check.
 */
enum CubeStatus cube_orientation_strongly_k_connected(const struct CubeOrientation *h,
                                                      uint32_t k,
                                                      bool *out);

/**
 * The full connectivity report as JSON
 * (`{verdict, k, witness_deleted, witness_side}`); NULL on error. Free with
 * `cube_string_free`.
 */
char *cube_orientation_connectivity_report_json(const struct CubeOrientation *h, uint32_t k);

/**
 * Number of Eulerian orientations of `Q_d` (`d` in {2, 4}).
 */
enum CubeStatus cube_count_eulerian_orientations(uint32_t d, uint64_t *out);

/**
 * Node connectivity of the undirected `Q_d` (`d <= 6`).
 */
enum CubeStatus cube_undirected_node_connectivity(uint32_t d, uint32_t *out);

/**
 * Harper's `b_v(m, Q_n)`.
 */
enum CubeStatus cube_harper_bv(uint64_t m, uint32_t n, uint64_t *out);

/**
 * The cascade representation of `m` in `Q_n`: writes `r`, `m'` and the
 * number of terms; if `terms` is non-null and `terms_cap` large enough, the
 * `(m_j, j)` pairs are written to it flattened, `j` descending.
 */
enum CubeStatus cube_cascade_representation(uint64_t m,
                                            uint32_t n,
                                            uint32_t *r,
                                            uint64_t *m_prime,
                                            uint32_t *terms,
                                            size_t terms_cap,
                                            size_t *term_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBE_ORIENT_H */
