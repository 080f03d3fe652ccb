/* C interface to the bergex engine: opaque handles, integer status codes,
 * JSON payloads. All returned strings are heap-allocated; release them with
 * bx_string_free. Thread safety: handles are not shared between threads.
 */
#ifndef BERGEX_BERGEX_H
#define BERGEX_BERGEX_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define BX_OK 0
#define BX_EUSAGE 1
#define BX_EREGIME 2
#define BX_EGOLDEN 3
#define BX_ESTRUCT 4
#define BX_EUNSUPPORTED 5
#define BX_EINTERNAL 6

typedef struct bx_expr bx_expr;

/* last error message for the calling thread (valid until the next call) */
const char* bx_last_error(void);
void bx_string_free(char* s);

/* ---- expression handles ---- */
int bx_expr_parse(const char* json, bx_expr** out);
int bx_expr_identity(bx_expr** out);
void bx_expr_free(bx_expr* e);
int bx_expr_to_json(const bx_expr* e, char** out);
int bx_expr_to_latex(const bx_expr* e, char** out);
int bx_expr_canonicalize(const bx_expr* e, bx_expr** out);
int bx_expr_compose(const bx_expr* a, const bx_expr* b, int cutoff, bx_expr** out);
int bx_expr_project(const bx_expr* e, int qin, int qout, bx_expr** out);
int bx_expr_charge(const bx_expr* e, int charge, bx_expr** out);
int bx_expr_apply_l(const bx_expr* e, bx_expr** out);
int bx_expr_linv(const bx_expr* e, int cutoff, bx_expr** out);
int bx_expr_normalize(const bx_expr* e, const char* preset, bx_expr** out);
int bx_expr_term_count(const bx_expr* e, size_t* out);

/* ---- batch commands ----
 * config and result are JSON documents; the result is deterministic for a
 * fixed config (and seed). Returns a BX_ status; on BX_EGOLDEN the result
 * carries the mismatch report.
 */
int bx_run(const char* config_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* BERGEX_BERGEX_H */
