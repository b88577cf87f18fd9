#ifndef ACTIVECH_ACTIVECH_H
#define ACTIVECH_ACTIVECH_H

#include <stddef.h>

#if defined(ACH_BUILDING_LIBRARY)
#define ACH_API __attribute__((visibility("default")))
#else
#define ACH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ach_status {
  ACH_OK = 0,
  ACH_ERR_CONFIG = 1,            /* invalid or inconsistent configuration */
  ACH_ERR_NUMERICAL = 2,         /* solver failure */
  ACH_ERR_IO = 3,                /* file system failure */
  ACH_ERR_DOMAIN = 4,            /* argument outside a function's domain */
  ACH_ERR_INVALID_ARGUMENT = 5,  /* null handle, bad buffer size */
  ACH_ERR_INTERNAL = 6
} ach_status;

typedef struct ach_config ach_config;
typedef struct ach_simulation ach_simulation;

/* One line of command output, without the trailing newline. */
typedef void (*ach_emit_fn)(const char* line, void* user);

ACH_API const char* ach_version(void);

/* Message of the last failed call on this thread ("" if none). */
ACH_API const char* ach_last_error(void);

/* Parses a configuration document (INI sections). */
ACH_API ach_status ach_config_parse(const char* text, ach_config** out);
ACH_API ach_status ach_config_load(const char* path, ach_config** out);
/* Overrides `section.key`; the document is revalidated and the override
   is dropped again when it is rejected. */
ACH_API ach_status ach_config_set(ach_config* cfg, const char* key, const char* value);
/* Copies the resolved value of `section.key` (defaults expanded) into buf,
   NUL-terminated. ACH_ERR_INVALID_ARGUMENT when buf is too small. */
ACH_API ach_status ach_config_get(const ach_config* cfg, const char* key, char* buf, size_t size);
ACH_API void ach_config_free(ach_config* cfg);

ACH_API size_t ach_command_count(void);
ACH_API const char* ach_command_name(size_t index);

/* Runs a subcommand (simulate, sharp-ode, stability, converge, modes,
   si-table, check). On ACH_OK, *verdict is 0 when the command's own
   checks passed and nonzero otherwise. emit may be NULL. */
ACH_API ach_status ach_run_command(const char* command, const ach_config* cfg, ach_emit_fn emit,
                                   void* user, int* verdict);

/* Stepwise simulation from the configured initial data. */
ACH_API ach_status ach_simulation_create(const ach_config* cfg, ach_simulation** out);
ACH_API ach_status ach_simulation_advance(ach_simulation* sim, long steps);
ACH_API ach_status ach_simulation_time(const ach_simulation* sim, double* t);
ACH_API ach_status ach_simulation_node_count(const ach_simulation* sim, size_t* n);
ACH_API ach_status ach_simulation_copy_phi(const ach_simulation* sim, double* buf, size_t size);
ACH_API ach_status ach_simulation_mass(const ach_simulation* sim, double* mass);
ACH_API void ach_simulation_free(ach_simulation* sim);

#ifdef __cplusplus
}
#endif

#endif
