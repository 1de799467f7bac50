/* maj3lab: Monte Carlo laboratory for majority-vote PAC learners.
 *
 * C interface to the simulation engine. All entry points are
 * exception-free; failures surface as a status code or a null pointer plus
 * a message retrievable with m3l_last_error() on the calling thread.
 *
 * Objects are created and destroyed by this library only. A pointer
 * returned by an accessor (m3l_config_get, m3l_report_text, ...) stays
 * valid until the owning object is freed or the same accessor is called
 * again on that object, whichever comes first.
 *
 * Determinism contract: every experiment is a pure function of its
 * configuration (including master_seed); the worker count changes wall
 * time, never bytes of output.
 */

#ifndef MAJ3LAB_H
#define MAJ3LAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct m3l_config m3l_config;
typedef struct m3l_report m3l_report;

typedef enum m3l_status {
  M3L_OK = 0,
  /* malformed input: bad key, bad value, unparseable text or file */
  M3L_ERR_INVALID_ARGUMENT = 1,
  /* a run failed mid-flight (a trial threw, file not readable, ...) */
  M3L_ERR_RUNTIME = 2,
  /* verification executed but at least one criterion failed */
  M3L_ERR_VERIFY_FAILED = 3,
  /* replay executed but at least one row did not reproduce */
  M3L_ERR_REPLAY_MISMATCH = 4
} m3l_status;

/* Library version, "major.minor.patch". */
const char* m3l_version(void);

/* Message from the most recent failed call on this thread; empty string if
 * the most recent call succeeded. */
const char* m3l_last_error(void);

/* ---- configuration ----------------------------------------------------
 * A config holds the flat key=value experiment description. Keys, value
 * syntax, and defaults are documented in the project README; they map 1:1
 * to the text format accepted by parse_text/parse_file, and `n_grid` is
 * the one key with no default.
 */

/* Fresh config with every key at its default and n_grid unset. */
m3l_config* m3l_config_create(void);

/* Configs from the flat text format. Null on parse failure. */
m3l_config* m3l_config_parse_text(const char* text);
m3l_config* m3l_config_parse_file(const char* path);

/* Sets one key, validating the value in the context of the current
 * config. */
m3l_status m3l_config_set(m3l_config* cfg, const char* key,
                          const char* value);

/* Canonical value of one key, or null for an unknown or unset key. */
const char* m3l_config_get(m3l_config* cfg, const char* key);

/* Convenience for the common CLI override. */
m3l_status m3l_config_set_seed(m3l_config* cfg, uint64_t master_seed);

/* Canonical text form: one key per line, stable order. Parsing it back
 * reproduces this config exactly. Null if the config is incomplete. */
const char* m3l_config_serialize(m3l_config* cfg);

void m3l_config_free(m3l_config* cfg);

/* ---- runs --------------------------------------------------------------
 * Each run returns a report: a status, a human-readable text, and a list
 * of named output files (CSV) for the caller to write wherever it wants.
 * A null return means the run could not start; a non-null report with a
 * non-OK status means it ran and found something to object to.
 *
 * workers <= 1 runs serially; higher counts run trials on that many
 * threads.
 */

/* Monte Carlo sweep over the config's n_grid. Files: the sweep CSV and a
 * bound-shape overlay for the same grid. */
m3l_report* m3l_sweep_run(const m3l_config* cfg, int workers);

/* Closed-form bound table for one (n_grid, d, delta). */
m3l_report* m3l_bounds_table(const int64_t* n_grid, size_t n_len, int64_t d,
                             double delta);

/* The acceptance verification suite. scale is "quick" or "full". When
 * has_seed_override is zero the shipped frozen seed is used and `seed` is
 * ignored; criteria with strict-inequality checks are certified against
 * the frozen seed. Report text is the per-criterion table; files are the
 * data CSVs the run produced. */
m3l_report* m3l_verify_run(const char* scale, int workers, uint64_t seed,
                           int has_seed_override);

/* Re-runs the experiment a sweep CSV came from and compares every derived
 * column bit for bit. */
m3l_report* m3l_replay_csv(const char* csv_text, int workers);

/* ---- report access ---------------------------------------------------- */

m3l_status m3l_report_status(const m3l_report* rep);
const char* m3l_report_text(const m3l_report* rep);
size_t m3l_report_file_count(const m3l_report* rep);
/* Null when i >= file count. */
const char* m3l_report_file_name(const m3l_report* rep, size_t i);
const char* m3l_report_file_text(const m3l_report* rep, size_t i);
void m3l_report_free(m3l_report* rep);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MAJ3LAB_H */
