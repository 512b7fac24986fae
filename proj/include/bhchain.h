/* bhchain.h — C interface to the attractive Bose-Hubbard chain toolkit.
 *
 * Opaque handles + integer status codes. Every function returns BHC_OK (0)
 * on success; on failure it returns a nonzero code and bhc_last_error()
 * carries a human-readable message (thread-local). Out-parameters are only
 * written on success; handles are released with the matching *_free call.
 *
 * Frequencies cross this interface in cyclic GHz, currents in mA, times in
 * microseconds; rate tables are in 1/us (printed as MHz in the table
 * headers, following the reference convention).
 */

#ifndef BHCHAIN_H
#define BHCHAIN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bhc_status {
    BHC_OK = 0,
    BHC_ERR_PARSE = 1,      /* config/file does not match the schema */
    BHC_ERR_VALIDATION = 2, /* invariant violated */
    BHC_ERR_NUMERIC = 3,    /* non-convergence, degeneracy, singularity */
    BHC_ERR_CAPACITY = 4,   /* capacity guard exceeded */
    BHC_ERR_DOMAIN = 5,     /* operation outside its domain */
    BHC_ERR_IO = 6,         /* filesystem failure */
    BHC_ERR_BADARG = 7      /* null handle / malformed argument */
} bhc_status;

typedef struct bhc_device bhc_device;
typedef struct bhc_table bhc_table;

const char* bhc_version(void);
const char* bhc_last_error(void);

/* ---- device configs ---- */
int bhc_device_load(const char* path, bhc_device** out);
int bhc_device_parse(const char* json_text, bhc_device** out);
void bhc_device_free(bhc_device* d);
int bhc_device_num_sites(const bhc_device* d, int* out);
int bhc_device_serialize(const bhc_device* d, char** json_out); /* free with bhc_string_free */
int bhc_device_hash(const bhc_device* d, char** hex_out);
int bhc_device_warnings(const bhc_device* d, char** text_out); /* newline-separated, may be empty */
void bhc_string_free(char* s);

/* ---- tables ---- */
int bhc_table_rows(const bhc_table* t, int* out);
int bhc_table_cols(const bhc_table* t, int* out);
const char* bhc_table_column_name(const bhc_table* t, int col);
const char* bhc_table_row_label(const bhc_table* t, int row); /* NULL when unlabeled */
const char* bhc_table_label_column(const bhc_table* t);
int bhc_table_value(const bhc_table* t, int row, int col, double* out);
/* format: 0 = CSV, 1 = JSON; provenance lines are newline-separated */
int bhc_table_write(const bhc_table* t, const char* path, int format, const char* provenance);
int bhc_table_render(const bhc_table* t, int format, const char* provenance, char** text_out);
void bhc_table_free(bhc_table* t);

/* ---- dressed-mode analysis ---- */
/* lambda, M, N rows (and eta, mu diagonal when with_kerr != 0) */
int bhc_modes_table(const bhc_device* d, double current_ma, int with_kerr, bhc_table** out);
/* manifold energies and eigenvectors at a photon number */
int bhc_spectrum(const bhc_device* d, int manifold_n, double nbar, double current_ma,
                 bhc_table** energies, bhc_table** vectors);

/* ---- dissipation ---- */
int bhc_cooling_rates(const bhc_device* d, double current_ma, bhc_table** out);
int bhc_cooling_rate(const bhc_device* d, const char* from, const char* to, double nbar,
                     double delta_c_ghz, /* NAN = resonant */
                     double* rate_per_us, int* valid);
int bhc_purcell(const bhc_device* d, double current_ma, bhc_table** out);
int bhc_chi(const bhc_device* d, double current_ma, bhc_table** out);
int bhc_dark_scan(const bhc_device* d, double i_min_ma, double i_max_ma, int n_points,
                  bhc_table** scan, bhc_table** zeros);

/* ---- dynamics ---- */
int bhc_simulate(const bhc_device* d, const char* protocol_path, bhc_table** trajectory);
int bhc_steady_state(const bhc_device* d, const char* protocol_path, bhc_table** stages);

/* ---- estimation ---- */
/* free_params: comma-separated names (w0_1, J, J13, alpha_1, B_1, A, ...) */
int bhc_fit_spectroscopy(const bhc_device* d, const char* csv_path, const char* free_params,
                         bhc_table** result);
/* free_rates: comma-separated "From>To" pairs; natural rates from the protocol file */
int bhc_fit_decay(const bhc_device* d, const char* csv_path, const char* protocol_path,
                  const char* free_rates, bhc_table** result);
/* targets: dressed cavity frequency + one dressed E per site, GHz */
int bhc_calibrate(const bhc_device* d, const double* targets_ghz, int n_targets,
                  bhc_table** result, bhc_device** calibrated);

/* ---- long-array limit ---- */
int bhc_long_array_modes(int n_sites, double omega0_ghz, double j_ghz,
                         const double* g_ghz, bhc_table** out);
int bhc_cascade(int n_sites, double omega0_ghz, double j_ghz, const double* g_ghz,
                const double* alpha_ghz, double kappa_ghz, int start_mode,
                const double* sweep_ghz, int n_sweep, bhc_table** report);

#ifdef __cplusplus
}
#endif

#endif /* BHCHAIN_H */
