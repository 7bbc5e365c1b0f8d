/* C interface to the cavity-QED steady-state and sweep library. */
#ifndef CQED_CQED_H
#define CQED_CQED_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CQED_BUILDING)
#    define CQED_API __declspec(dllexport)
#  else
#    define CQED_API __declspec(dllimport)
#  endif
#else
#  define CQED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cqed_status {
  CQED_OK = 0,
  CQED_ERR_INVALID_ARGUMENT = 1,
  CQED_ERR_CONFIG = 2,
  CQED_ERR_SOLVER = 3,
  CQED_ERR_IO = 4,
  CQED_ERR_SINGULAR = 5,
  CQED_ERR_INTERNAL = 6
} cqed_status;

typedef struct cqed_device cqed_device;
typedef struct cqed_grid cqed_grid;
typedef struct cqed_result cqed_result;

/* Derived quantities at one flux point. Frequencies in rad/ns, times in ns. */
typedef struct cqed_derived {
  double omega_f;
  double theta;
  double omega_a;
  double g1;
  double n0;
  double P0;
  double T1;
  double T2;
  double gamma_c;
} cqed_derived;

/* Message for the last failed call on this thread; never NULL. */
CQED_API const char* cqed_last_error(void);
CQED_API const char* cqed_version(void);

CQED_API cqed_status cqed_device_load(const char* path, cqed_device** out);
CQED_API cqed_status cqed_device_parse(const char* json_text, cqed_device** out);
CQED_API void cqed_device_free(cqed_device* device);

CQED_API cqed_status cqed_grid_load(const char* path, cqed_grid** out);
CQED_API cqed_status cqed_grid_parse(const char* json_text, cqed_grid** out);
CQED_API void cqed_grid_free(cqed_grid* grid);

/* Overrides; each re-validates the grid. task: transmission-map, imd,
   bistability, shr-map, spectrum. branch: ground, excited, combined. */
CQED_API cqed_status cqed_grid_set_task(cqed_grid* grid, const char* task);
CQED_API cqed_status cqed_grid_set_power_dbm(cqed_grid* grid, double power_dbm);
CQED_API cqed_status cqed_grid_set_shr_order(cqed_grid* grid, int order);
CQED_API cqed_status cqed_grid_set_signal_offset_khz(cqed_grid* grid, double offset_khz);
CQED_API cqed_status cqed_grid_set_branch(cqed_grid* grid, const char* branch);

/* workers <= 0: CQED_WORKERS, else hardware concurrency. */
CQED_API cqed_status cqed_run_sweep(const cqed_device* device, const cqed_grid* grid, int workers,
                                    cqed_result** out);

CQED_API size_t cqed_result_row_count(const cqed_result* result);
CQED_API size_t cqed_result_diagnostic_count(const cqed_result* result);
/* Borrowed pointer, valid until cqed_result_free. NULL when out of range. */
CQED_API const char* cqed_result_diagnostic(const cqed_result* result, size_t index);
/* format: "csv" or "json"; path "-" writes to stdout. */
CQED_API cqed_status cqed_result_write(const cqed_result* result, const char* format, const char* path);
/* Caller releases *out with cqed_string_free. */
CQED_API cqed_status cqed_result_to_string(const cqed_result* result, const char* format, char** out);
CQED_API void cqed_string_free(char* s);
CQED_API void cqed_result_free(cqed_result* result);

CQED_API cqed_status cqed_bessel_j(int order, double x, double* out);
/* omega_f in rad/ns. */
CQED_API cqed_status cqed_derive(const cqed_device* device, double omega_f, cqed_derived* out);
/* Drive strength S_p [1/ns^2] from port power; omega_p in rad/ns. */
CQED_API cqed_status cqed_power_to_drive(const cqed_device* device, double power_dbm, double omega_p, double* out);

#ifdef __cplusplus
}
#endif

#endif /* CQED_CQED_H */
