#ifndef EQUIVOTE_EQUIVOTE_H
#define EQUIVOTE_EQUIVOTE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define EVR_API __declspec(dllexport)
#else
#define EVR_API __attribute__((visibility("default")))
#endif

typedef enum evr_status {
  EVR_OK = 0,
  EVR_INVALID_ARGUMENT = 1,
  EVR_DEGREE_MISMATCH = 2,
  EVR_PARSE = 3,
  EVR_INFEASIBLE = 4,
  EVR_OVERFLOW = 5,
  EVR_PRECONDITION = 6,
  EVR_NOT_EQUITABLE = 7,
  EVR_CONSTRUCTION_FAILED = 8,
  EVR_INTERNAL = 9
} evr_status;

/* Opaque rule handle. */
typedef struct evr_rule evr_rule;

/* Message of the last failed call on this thread; never NULL. */
EVR_API const char* evr_last_error(void);
EVR_API const char* evr_version(void);
EVR_API const char* evr_status_name(evr_status status);

/* Strings returned through `char** out` are owned by the caller and
   released with evr_string_free. */
EVR_API void evr_string_free(char* s);

/* type: majority, longest_run, grd, ccc, coalition, dictator, chair,
   restricted_majority, constant, projective, pgl2_random, cyclic_random.
   params_json: object with n, p, branching, rows, cols, seed, ... as the
   type requires (NULL means {}). */
EVR_API evr_status evr_rule_construct(const char* type, const char* params_json,
                                      evr_rule** out);
EVR_API evr_status evr_rule_parse(const char* document, evr_rule** out);
EVR_API evr_status evr_rule_serialize(const evr_rule* rule, char** out);
EVR_API void evr_rule_free(evr_rule* rule);
EVR_API size_t evr_rule_degree(const evr_rule* rule);

/* votes[i] in {-1, 0, 1}; *out receives the outcome. */
EVR_API evr_status evr_rule_evaluate(const evr_rule* rule, const int8_t* votes, size_t n,
                                     int8_t* out);

/* options_json: {"equity": bool, "k": int, "min_coalition": bool,
   "pivotality": bool, "caps": {...}, "format": "machine"|"human"}. */
EVR_API evr_status evr_analyze(const evr_rule* rule, const char* options_json, char** out);

/* theorem: a verifier id or "all". options_json: {"params": {...},
   "caps": {...}, "format": "machine"|"human"}. *passed is set to 1 when
   every instance passes. */
EVR_API evr_status evr_verify(const char* theorem, const char* options_json, char** out,
                              int* passed);

/* Points and lines of PG(2,p) as a JSON document. */
EVR_API evr_status evr_geometry_document(uint32_t p, char** out);

#ifdef __cplusplus
}
#endif

#endif
