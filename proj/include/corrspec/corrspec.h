/*
 * corrspec: correlation-network spectral embedding library.
 *
 * C interface of the shared library.  All functions return a cs_status;
 * every other result travels through out-parameters.  Objects are opaque
 * handles owned by the library and released with their destroy function.
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with cs_string_free.
 *
 * On failure, out-parameters are left untouched and a human-readable
 * message is available from cs_last_error() on the same thread.
 */
#ifndef CORRSPEC_H
#define CORRSPEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_EINVAL = 1,      /* null pointer or malformed argument */
  CS_EDOMAIN = 2,     /* argument outside its mathematical domain */
  CS_EDEGENERATE = 3, /* a time series carries no usable variation */
  CS_ERANK = 4,       /* requested spectral quantity vanishes at tolerance */
  CS_ENUMERIC = 5,    /* a numerical routine failed */
  CS_EINTEGRITY = 6,  /* internal invariant violated */
  CS_EIO = 7,         /* file system or serialization failure */
  CS_ECONFIG = 8,     /* invalid configuration document */
  CS_EINTERNAL = 9    /* unexpected failure */
} cs_status;

/* Dense row-major matrix of doubles. */
typedef struct cs_matrix cs_matrix;

/* Result table of a Monte Carlo sweep. */
typedef struct cs_table cs_table;

/* Library version as "major.minor.patch". */
const char* cs_version(void);

/* Message describing the most recent failure on the calling thread. */
const char* cs_last_error(void);

/* Releases a string returned by the library.  NULL is allowed. */
void cs_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Matrices                                                            */
/* ------------------------------------------------------------------ */

/* Creates a rows x cols matrix.  `data` may be NULL (zeros) or point to
 * rows*cols doubles in row-major order. */
cs_status cs_matrix_create(size_t rows, size_t cols, const double* data,
                           cs_matrix** out);
void cs_matrix_destroy(cs_matrix* m);
size_t cs_matrix_rows(const cs_matrix* m);
size_t cs_matrix_cols(const cs_matrix* m);
cs_status cs_matrix_get(const cs_matrix* m, size_t row, size_t col,
                        double* out);
/* Copies the whole matrix into `buf` (rows*cols doubles, row-major). */
cs_status cs_matrix_copy_data(const cs_matrix* m, double* buf);

/* Reads a matrix file (CSV or binary; detected from content). */
cs_status cs_matrix_read(const char* path, cs_matrix** out);
/* format: 0 = CSV, 1 = binary.  Writes are atomic. */
cs_status cs_matrix_write(const cs_matrix* m, const char* path, int format);

/* ------------------------------------------------------------------ */
/* Synthetic data                                                      */
/* ------------------------------------------------------------------ */

/* Draws signals and (optionally) noise.
 *
 * signal_json: {"n":int, "T":int, "d0":int, "seed":uint64,
 *               "normalization":"frobenius_sqrt_n"|"rows_standardized"}
 * noise_json (NULL for signals only):
 *              {"family":"gaussian"|"laplacian", "nu":double,
 *               "row_scaling":"scaled_by_row_norm"|"constant",
 *               "alpha":double, "seed":uint64}
 *
 * Outputs (each may be NULL if not wanted): the clean signals, the noisy
 * observation (clean when noise_json is NULL), and a JSON document with the
 * frequency support, structural rank, per-row signal power and noise
 * variance, the inflated row (or -1), and gamma (null when nu = 0). */
cs_status cs_generate(const char* signal_json, const char* noise_json,
                      cs_matrix** zstar, cs_matrix** z, char** meta_json);

/* ------------------------------------------------------------------ */
/* Networks and embeddings                                             */
/* ------------------------------------------------------------------ */

/* Pearson correlation matrix of the rows of z. */
cs_status cs_correlation(const cs_matrix* z, cs_matrix** r);

/* Rows centered and scaled to unit norm. */
cs_status cs_standardize(const cs_matrix* z, cs_matrix** out);

/* Embeds a series matrix.  method: "ase", "pca" or "naive".  d = 0 picks
 * the numerical rank of the correlation matrix (ignored by "naive").
 * info_json receives {"method", "d", "eigenvalues":[...], "warnings":[...]}
 * (eigenvalues only for "ase"); pass NULL if not wanted. */
cs_status cs_embed_series(const cs_matrix* z, const char* method, int d,
                          cs_matrix** x, char** info_json);

/* Adjacency spectral embedding of a symmetric matrix (e.g. a correlation
 * network).  d = 0 picks the numerical rank. */
cs_status cs_embed_correlation(const cs_matrix* r, int d, cs_matrix** x,
                               char** info_json);

/* Procrustes-aligned comparison of an embedding against clean series.
 * `truth` is the clean signal matrix; its standardized rows are the
 * alignment target.  metrics_json receives {"error_2inf", "error_fro",
 * "sin_theta", "n", "d_estimate", "d_target"}; sin_theta is the largest
 * principal-angle distance between column spaces and is null unless both
 * matrices have the same number of linearly independent columns. */
cs_status cs_evaluate(const cs_matrix* estimate, const cs_matrix* truth,
                      char** metrics_json);

/* ------------------------------------------------------------------ */
/* Sweeps                                                              */
/* ------------------------------------------------------------------ */

/* Runs a Monte Carlo sweep from a JSON configuration (see the repository
 * documentation for the schema).  workers_override > 0 replaces the
 * configured worker count. */
cs_status cs_sweep_run(const char* config_json, int workers_override,
                       cs_table** out);

/* JSON configuration of a built-in preset ("fig1", "fig2", "fig3", "fig4",
 * "appendix_noise", "appendix_dimsel").  full != 0 selects the
 * publication-size grids. */
cs_status cs_preset_config(const char* id, int full, char** config_json);

/* Writes the per-trial records as CSV (atomic). */
cs_status cs_table_csv(const cs_table* t, const char* path);

/* Summary statistics and log-log slope fits as JSON:
 * {"experiment", "rows":[{cell,n,T,d0,d_embed,nu,alpha,family,method,
 *  trials,mean,sem}], "slopes":[{panel,series,slope,intercept,r2}]}.
 * Slopes are fitted against the sweep's x-axis field when it is
 * log-log scaled. */
cs_status cs_table_summary_json(const cs_table* t, char** json);

/* Renders one SVG per panel into out_dir; files_json receives a JSON array
 * of the written paths. */
cs_status cs_table_render_plots(const cs_table* t, const char* out_dir,
                                char** files_json);

void cs_table_destroy(cs_table* t);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CORRSPEC_H */
