#ifndef SHANNON_SHANNON_H
#define SHANNON_SHANNON_H

/* C interface to the shannon engine. Every function returns a status code;
 * on failure shn_last_error() describes the problem for the calling thread.
 * Strings handed out by the library are owned by the caller unless stated. */

#include <stddef.h>

#if defined(SHN_BUILDING_LIBRARY)
#define SHN_API __attribute__((visibility("default")))
#else
#define SHN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shn_status {
    SHN_OK = 0,
    SHN_ERR_PARSE,
    SHN_ERR_DIMENSION_MISMATCH,
    SHN_ERR_NOT_DIVISIBLE,
    SHN_ERR_ZERO_ELEMENT,
    SHN_ERR_SEQUENCE_EXHAUSTED,
    SHN_ERR_NOT_STABILIZED,
    SHN_ERR_INVALID_NORMALIZER,
    SHN_ERR_NON_ARCHIMEDEAN_SEQUENCE,
    SHN_ERR_ARCHIMEDEAN_SEQUENCE,
    SHN_ERR_BAD_UNIFORMIZER,
    SHN_ERR_UNDECIDED_EQUALITY,
    SHN_ERR_SIGMA_OUT_OF_RANGE,
    SHN_ERR_UNKNOWN_FAMILY,
    SHN_ERR_CONFIG,
    SHN_ERR_PRECONDITION,
    SHN_ERR_OVERFLOW,
    SHN_ERR_EXPRESSION_SWELL,
    SHN_ERR_DOMAIN_MISMATCH,
    SHN_ERR_INTERNAL,
    SHN_ERR_INVALID_ARGUMENT
} shn_status;

typedef enum shn_verdict {
    SHN_ARCHIMEDEAN = 0,
    SHN_NON_ARCHIMEDEAN = 1,
    SHN_UNDECIDED = 2
} shn_verdict;

typedef struct shn_session shn_session;
typedef struct shn_report shn_report;

SHN_API const char* shn_version(void);
SHN_API const char* shn_status_name(shn_status status);
/* Message of the last failure on this thread; empty after a success. */
SHN_API const char* shn_last_error(void);

SHN_API shn_status shn_session_create(shn_session** out);
SHN_API void shn_session_free(shn_session* session);

/* Replace the session configuration with a config document. */
SHN_API shn_status shn_session_load_config(shn_session* session, const char* path);
SHN_API shn_status shn_session_load_config_string(shn_session* session, const char* text);

/* Override one setting: kind, family, sigma, blocks, dim, vars, element,
 * normalizer, denominator, uniformizer, horizon, window, origin, guard,
 * tolerance, format, csv. "element" appends. */
SHN_API shn_status shn_session_set(shn_session* session, const char* key, const char* value);
SHN_API shn_status shn_session_clear_elements(shn_session* session);

/* Runs one command. On failure *report is NULL. */
SHN_API shn_status shn_session_run(const shn_session* session, const char* command, shn_report** report);

/* 0 certified or exact, 2 heuristic or undecided, 1 error. */
SHN_API int shn_report_exit_code(const shn_report* report);
SHN_API const char* shn_report_text(const shn_report* report);
SHN_API const char* shn_report_csv(const shn_report* report);
/* Path named by the csv setting, or NULL. */
SHN_API const char* shn_report_csv_path(const shn_report* report);
SHN_API int shn_report_wants_csv_stdout(const shn_report* report);
SHN_API void shn_report_free(shn_report* report);

/* Direct queries on the session's sequence and normalizer. */
SHN_API shn_status shn_polynomial_order(const shn_session* session, const char* element, long long* order);
SHN_API shn_status shn_e_value(const shn_session* session, const char* element, long long* value, int* certified);
SHN_API shn_status shn_classify(const shn_session* session, shn_verdict* verdict, int* certified);
SHN_API shn_status shn_tau_enclosure(const shn_session* session, double* lo, double* hi, int* infinite);
/* Exact or interval text of w(element), written to a string freed with shn_string_free. */
SHN_API shn_status shn_w_value(const shn_session* session, const char* element, char** text, int* certified);
SHN_API void shn_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
