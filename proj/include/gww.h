/* C interface to the Welschinger-invariant engine.
 *
 * All work goes through gww_run_json: pass a UTF-8 JSON run spec, get back an
 * opaque result holding the JSON report plus the process-style exit code
 * (0 ok, 1 verification red, 2 not generic, 3 input error, 4 internal).
 * Results are heap objects owned by the caller; free with gww_result_free.
 * The library keeps no global state; calls are thread-safe.
 */
#ifndef GWW_H
#define GWW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gww_result gww_result;

/* Runs one command. Returns the exit code; on return *out (if out != NULL)
 * holds the report, even for nonzero exit codes. Returns 3 and sets *out to
 * NULL only if spec_json is NULL or the result cannot be allocated. */
int gww_run_json(const char* spec_json, gww_result** out);

/* Report JSON text; valid until gww_result_free. Never NULL. */
const char* gww_result_json(const gww_result* r);

int gww_result_exit_code(const gww_result* r);

void gww_result_free(gww_result* r);

/* Message for the last failure of this thread that produced no result
 * (NULL spec, allocation failure). Empty string if none. */
const char* gww_last_error(void);

/* Rational-curve count N_d as a decimal string. Writes at most len bytes
 * including the terminator; returns the full string length (excluding the
 * terminator), or -1 if d is outside [1, 12]. */
int gww_kontsevich(int d, char* buf, size_t len);

const char* gww_version(void);

#ifdef __cplusplus
}
#endif

#endif /* GWW_H */
