#ifndef VENERONI_H
#define VENERONI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define VN_API __attribute__((visibility("default")))
#else
#define VN_API
#endif

typedef enum vn_status {
    VN_OK = 0,
    VN_ERR_INVALID_ARGUMENT = 1,
    VN_ERR_PARSE = 2,
    VN_ERR_GENERICITY = 3,
    VN_ERR_CONSTRUCTION = 4,
    VN_ERR_DIVISION = 5,
    VN_ERR_LIMIT = 6,
    VN_ERR_VERIFICATION_FAILED = 7,
    VN_ERR_INTERNAL = 8
} vn_status;

typedef enum vn_level { VN_LEVEL_FAST = 0, VN_LEVEL_FULL = 1 } vn_level;

typedef enum vn_det_strategy { VN_DET_MINOR_DP = 0, VN_DET_BAREISS = 1 } vn_det_strategy;

/* Opaque handles. */
typedef struct vn_flats vn_flats;
typedef struct vn_map vn_map;
typedef struct vn_report vn_report;

typedef struct vn_verify_options {
    vn_level level;
    size_t samples;             /* round-trip and transversal samples */
    uint64_t seed;              /* seed for sampled checks */
    const char* sample_field;   /* "qq" or "fp:<p>"; NULL means qq */
    int force_symbolic;         /* symbolic composition for every n */
    size_t composition_points;  /* points for sampled composition */
    int timing;                 /* record per-check milliseconds */
    vn_det_strategy strategy;
} vn_verify_options;

VN_API const char* vn_version(void);
VN_API const char* vn_status_name(vn_status status);
/* Message of the last failing call on this thread; never NULL. */
VN_API const char* vn_last_error(void);
/* Releases strings returned through char** out parameters. */
VN_API void vn_string_free(char* s);

VN_API vn_status vn_flats_generate(unsigned n, uint64_t seed, long long bound, const char* field, vn_flats** out);
VN_API vn_status vn_flats_from_json(const char* text, vn_flats** out);
VN_API vn_status vn_flats_to_json(const vn_flats* flats, char** out);
VN_API unsigned vn_flats_n(const vn_flats* flats);
VN_API size_t vn_flats_retries(const vn_flats* flats);
VN_API void vn_flats_free(vn_flats* flats);

VN_API vn_status vn_map_build(const vn_flats* flats, vn_det_strategy strategy, vn_map** out);
VN_API vn_status vn_map_from_json(const char* text, vn_map** out);
VN_API vn_status vn_map_to_json(const vn_map* map, char** out);
VN_API void vn_map_free(vn_map* map);

VN_API void vn_verify_options_init(vn_verify_options* opts);
/* Both return VN_OK whenever a report was produced, even if checks failed. */
VN_API vn_status vn_verify_flats(const vn_flats* flats, const vn_verify_options* opts, vn_report** out);
VN_API vn_status vn_verify_map(const vn_map* map, const vn_verify_options* opts, vn_report** out);
VN_API int vn_report_passed(const vn_report* report);
VN_API vn_status vn_report_to_json(const vn_report* report, char** out);
VN_API void vn_report_free(vn_report* report);

/* Transversal through a point ("1,2/3,0,...") to the flats not in omit. */
VN_API vn_status vn_transversal(const vn_flats* flats, const char* point, const size_t* omit, size_t omit_count,
                                char** out_json);

/* Determinant timings for n_min..n_max; strategies is a bit mask of
   (1 << vn_det_strategy). Refuses n above 6 (minor_dp) or 5 (bareiss)
   unless force is set. */
VN_API vn_status vn_bench(unsigned n_min, unsigned n_max, unsigned reps, uint64_t seed, unsigned strategies,
                          int force, char** out_json);

/* Worked examples: n = 3 transversal count, n = 4 pencil and Q_0 cap Q_1. */
VN_API vn_status vn_demo(unsigned n, uint64_t seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
