/* fusekit C API: opaque handles and integer status codes.
 *
 * Every function returns FK_OK (0) on success or a nonzero status; the
 * matching message is available through fk_last_error() until the next call
 * on the same thread.  Strings returned through char** are heap-allocated
 * and released with fk_string_free.  All handles are reference-owning and
 * released with their _free function.
 */
#ifndef FUSEKIT_H
#define FUSEKIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fk_group fk_group;
typedef struct fk_system fk_system;
typedef struct fk_system_list fk_system_list;

typedef enum {
  FK_OK = 0,
  FK_ERR_ENUMERATION_CAP = 1,
  FK_ERR_AUT_CAP = 2,
  FK_ERR_NOT_NORMAL = 3,
  FK_ERR_NOT_CONJUGATE = 4,
  FK_ERR_UNKNOWN_TAG = 5,
  FK_ERR_INCONSISTENT_PRESENTATION = 6,
  FK_ERR_PARSE = 7,
  FK_ERR_SEMANTIC = 8,
  FK_ERR_PRECONDITION = 9,
  FK_ERR_NOT_FULLY_NORMALIZED = 10,
  FK_ERR_BOREL = 11,
  FK_ERR_BAD_ARGUMENT = 12,
  FK_ERR_INTERNAL = 99
} fk_status;

const char* fk_last_error(void);
void fk_string_free(char* s);

/* Applies the FUSEKIT_CAPS environment variable.  Values may only lower the
 * caps unless allow_raise is nonzero. */
void fk_init(int allow_raise);

/* ---- groups ---- */
fk_status fk_group_from_catalog(const char* name, fk_group** out);
fk_status fk_group_read(const char* path, fk_group** out);
void fk_group_free(fk_group* g);
int64_t fk_group_order(const fk_group* g);
fk_status fk_group_write(const fk_group* g, char** text);
fk_status fk_catalog_names(char** text);

/* ---- fusion systems ---- */
fk_status fk_datum_read(const char* path, fk_system** out);
fk_status fk_datum_parse(const char* text, fk_system** out);
fk_status fk_datum_write(const fk_system* s, char** text);
fk_status fk_group_fusion_system(const fk_group* g, int p, fk_system** out);
void fk_system_free(fk_system* s);

/* verdict: 1 saturated, 0 not; failing carries the named class on failure */
fk_status fk_system_is_saturated(const fk_system* s, int* verdict, char** failing);
/* verdict: 1 when the fusion data are isomorphic (after moving both systems
 * onto one standard copy of the underlying group when needed) */
fk_status fk_systems_isomorphic(const fk_system* a, const fk_system* b, int* verdict);
/* order of Aut_F(P) and of Out_F(P) for a named datum subgroup */
fk_status fk_system_automizer_order(const fk_system* s, const char* subgroup, int64_t* aut_order,
                                    int64_t* out_order);
/* verdict: 1 when the named subgroups are conjugate in the system */
fk_status fk_system_conjugate(const fk_system* s, const char* p, const char* r, int* verdict);
/* one table row: essential orders, outer orders, |Out_F(S)|, core, focal */
fk_status fk_system_describe(const fk_system* s, char** text);

/* ---- the search ---- */
typedef struct {
  int allow_core;           /* keep systems with O_p(F) != 1 */
  int allow_partial_focal;  /* keep systems with foc(F) < S */
  int jobs;                 /* worker threads for the saturation phase */
  int transcript_log;       /* emit progress lines through the callback */
  void (*log_line)(const char* line, void* user);
  void* log_user;
} fk_search_options;

fk_status fk_all_fusion_systems(const fk_group* g, int p, const fk_search_options* opts,
                                fk_system_list** out);
void fk_system_list_free(fk_system_list* l);
int fk_system_list_size(const fk_system_list* l);
fk_status fk_system_list_get(const fk_system_list* l, int index, fk_system** out);
fk_status fk_system_list_table(const fk_system_list* l, char** text);

#ifdef __cplusplus
}
#endif

#endif
