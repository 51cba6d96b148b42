#ifndef VOACLUSTER_H
#define VOACLUSTER_H

/* C interface to the genus-g character and cluster mutation engine.
 *
 * Conventions:
 *  - every operation returns a vc_status; VC_OK is zero
 *  - on failure vc_last_error() holds a thread-local diagnostic
 *  - strings returned through char** are heap copies; release them with
 *    vc_string_free
 *  - structured payloads travel as UTF-8 JSON text; exact rationals are
 *    decimal strings like "-3/7"
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define VC_VERSION_STRING "1.0.0"

typedef enum vc_status {
    VC_OK = 0,
    VC_VERIFY_FAILED = 1, /* an exact identity or digest check failed */
    VC_INVALID = 2,       /* malformed input or domain violation */
    VC_POLE = 3,          /* evaluation hit a zero denominator */
    VC_CUTOFF = 4,        /* truncation or weight cutoff exceeded */
    VC_INTERNAL = 5
} vc_status;

const char* vc_version(void);
/* message for the most recent failing call on this thread; never NULL */
const char* vc_last_error(void);
void vc_string_free(char* s);

/* hex digest of a byte buffer, for artifact manifests */
vc_status vc_sha256(const char* data, size_t len, char** out_hex);

/* ------------------------------------------------------------------ */
/* genus-g character contexts                                          */
/* ------------------------------------------------------------------ */

typedef struct vc_context vc_context;

/* params_json: NULL keeps every sewing center symbolic; otherwise
 * {"g":..,"handles":[{"w_plus":"symbolic"|"<rat>", "w_minus":..,
 * ["rho":"<rat>"]}, ..]}. order is the retained series order T; cutoff <= 0
 * selects a default state-space bound. */
vc_status vc_context_create(int genus, int order, int cutoff, const char* params_json,
                            vc_context** out);
void vc_context_free(vc_context* ctx);

/* partition character as series JSON; rank2 != 0 selects the tensor square */
vc_status vc_char_partition(const vc_context* ctx, int rank2, char** out_json);

/* insertions_json: [{"state":"a(-1)|0>", "coordinate":"y1"}, ...];
 * result: {"series":.., "degrees":[["y1",1],..]} */
vc_status vc_char_npoint(const vc_context* ctx, const char* insertions_json, char** out_json);

/* genus-one multiplier expansion of the partition character:
 * {"coefficients":["1","1","2",..]}; the context's genus must be one and
 * its retained order bounds how many coefficients are exact */
vc_status vc_char_nome(const vc_context* ctx, int rank2, unsigned count, char** out_json);

/* brute-force check of the reduction identity for reducing state u_state
 * (state text such as "omega" or "a(-1)|0>") against the insertions;
 * f_json: optional array seeding the kernel's free part, entry l giving
 * f_l as a rational string or as ascending power coefficients ["1","2"].
 * Result: {"ok":bool, "detail":".."}. VC_OK even when ok is false. */
vc_status vc_char_verify_zhu(const vc_context* ctx, const char* u_state,
                             const char* insertions_json, const char* f_json, char** out_json);

/* ------------------------------------------------------------------ */
/* Schottky groups                                                     */
/* ------------------------------------------------------------------ */

/* randomized exact identity checks; result is a check-list JSON
 * {"pass":bool, "failures":n, "checks":[{"name","pass","detail"},..]} */
vc_status vc_schottky_suite(unsigned trials, unsigned rng_seed, char** out_json);

/* reduced words in the free group on g generators up to max_len */
vc_status vc_schottky_words(int genus, int max_len, char** out_json);

/* attracting fixed points of short words; params must be fully numeric */
vc_status vc_schottky_orbit(const char* params_json, int max_len, char** out_json);

/* parameter-space action: move a fully numeric parameter set by the
 * determinant-one map "a,b,c,d"; result is the same params schema */
vc_status vc_schottky_sl2(const char* params_json, const char* gamma, char** out_json);

/* ------------------------------------------------------------------ */
/* reduction kernels                                                   */
/* ------------------------------------------------------------------ */

/* dressed kernel for a weight-`weight` reducing state at the given genus
 * and order, with optional f coefficients as above */
vc_status vc_zhu_kernel(int genus, int weight, int order, const char* f_json, char** out_json);

/* ------------------------------------------------------------------ */
/* classical cluster algebra                                           */
/* ------------------------------------------------------------------ */

typedef struct vc_cluster_seed vc_cluster_seed;

/* b_json: integer matrix [[0,1],[-1,0]]; coeffs: "trivial" or "principal" */
vc_status vc_cluster_create(const char* b_json, const char* coeffs, vc_cluster_seed** out);
void vc_cluster_free(vc_cluster_seed* seed);

/* mutate in place along a word of one-based directions */
vc_status vc_cluster_mutate(vc_cluster_seed* seed, const int* word, size_t len);

/* {"n":.., "B":[[..]], "x":[".."], "y":[[exponents],..]} */
vc_status vc_cluster_json(const vc_cluster_seed* seed, char** out_json);

/* breadth-first exchange-graph walk:
 * {"clusters":.., "variables":.., "closed":bool, "depth":..} */
vc_status vc_cluster_enumerate(const vc_cluster_seed* seed, int max_depth, long long cap,
                               char** out_json);

/* Laurent certificate along a word:
 * {"laurent":bool, "denominators":[[e1,..],..]} */
vc_status vc_cluster_laurent(const vc_cluster_seed* seed, const int* word, size_t len,
                             char** out_json);

/* ------------------------------------------------------------------ */
/* vertex operator cluster seeds                                       */
/* ------------------------------------------------------------------ */

typedef struct vc_vseed vc_vseed;

/* build from insertions over an existing context */
vc_status vc_vseed_build(const vc_context* ctx, const char* insertions_json, vc_vseed** out);

/* load a stored seed; the character is recomputed and its digest verified.
 * weight_cutoff <= 0 selects a default. */
vc_status vc_vseed_create(const char* seed_json, int weight_cutoff, vc_vseed** out);
void vc_vseed_free(vc_vseed* seed);

vc_status vc_vseed_json(const vc_vseed* seed, char** out_json);

/* spec_json forms:
 *   {"preset":"vacuum", "xi":"-1"}
 *   {"preset":"reduction", "u":"omega", "direction":0, "f":[..]}
 *   {"u":"a(-1)|0>", "direction":0, "mode":0, "F":"mode", "G":"mode",
 *    "H":"mode", "xi":"1", "tilde":"window"|"remainder", "f":[..]}
 * Result: {"consistent":bool, "seed":<seed JSON>, "transformed":{..}} */
vc_status vc_vseed_mutate(const vc_vseed* seed, const char* spec_json, char** out_json);

/* vacuum mutation applied twice; {"pass":bool}. VC_OK even when false. */
vc_status vc_vseed_involution(const vc_vseed* seed, const char* xi, char** out_json);

/* ------------------------------------------------------------------ */
/* aggregate verification                                              */
/* ------------------------------------------------------------------ */

/* axiom, Schottky, kernel, reduction, cluster and involution suites at
 * interactive sizes; same check-list payload as vc_schottky_suite */
vc_status vc_verify_all(int genus, int order, unsigned rng_seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* VOACLUSTER_H */
