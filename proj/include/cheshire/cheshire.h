/*
 * Copyright 2026 The Cheshire Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CHESHIRE_CHESHIRE_H_
#define CHESHIRE_CHESHIRE_H_

/*
 * C interface to the simulator. Every fallible call returns a chs_status;
 * on failure the message of the most recent error on the calling thread is
 * available from chs_last_error_message(). Handles are opaque and must be
 * released with the matching *_destroy function, which accepts NULL.
 *
 * Lengths are in units of the pointer width W unless a config says otherwise.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(CHESHIRE_BUILDING_LIBRARY)
#define CHS_API __attribute__((visibility("default")))
#else
#define CHS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chs_status {
    CHS_OK = 0,
    CHS_INVALID_ARGUMENT = 1,
    CHS_BASIS_MISMATCH = 2,
    CHS_DEGENERATE_INPUT = 3,
    CHS_INCOMPATIBLE_GRID = 4,
    CHS_REGIME = 5,
    CHS_NULL_POSTSELECTION = 6,
    CHS_UNDEFINED_WEAK_VALUE = 7,
    CHS_IO = 8,
    CHS_INTERNAL = 9
} chs_status;

CHS_API const char *chs_status_name(chs_status status);
CHS_API const char *chs_last_error_message(void);
CHS_API const char *chs_version(void);

typedef enum chs_format { CHS_FORMAT_CSV = 0, CHS_FORMAT_PGM = 1 } chs_format;
typedef enum chs_path { CHS_PATH_I = 0, CHS_PATH_II = 1 } chs_path;

/* ---- photon: three-probe interferometer with two Gaussian pointers ---- */

typedef struct chs_photon_config {
    double width;          /* W */
    double delta_x;        /* pointer-1 shift for |+> in arm I */
    double delta_y;        /* pointer-2 shift for presence in arm II */
    size_t grid_n;         /* points per axis for emitted fields */
    double grid_half_span; /* fields cover [-span W, span W] on both axes */
} chs_photon_config;

/* W = 1, dx = dy = 0.1, 512 points over +-8 W. */
CHS_API void chs_photon_config_default(chs_photon_config *config);

typedef struct chs_photon chs_photon;

CHS_API chs_status chs_photon_create(const chs_photon_config *config, chs_photon **out);
CHS_API void chs_photon_destroy(chs_photon *photon);

/* Post-selected pointer-term coefficients in the order (arm II, arm I |+>,
 * arm I |->). */
CHS_API chs_status chs_photon_coefficients(const chs_photon *photon, double re[3], double im[3]);
CHS_API chs_status chs_photon_centroid(const chs_photon *photon, double *x, double *y);
CHS_API chs_status chs_photon_postselection_probability(const chs_photon *photon, double *p);
/* Purity of the reduced pointer-1 state; 1 means the pointers factorize. */
CHS_API chs_status chs_photon_pointer_purity(const chs_photon *photon, double *purity);
/* Probability in disks of `radius` around each term centre, ordered like the
 * coefficients. Fails with CHS_REGIME when the terms overlap. */
CHS_API chs_status chs_photon_lobe_weights(const chs_photon *photon, double radius, double weights[3]);

typedef enum chs_field {
    CHS_FIELD_ARM_II = 0,  /* 2 F(x, y - dy), non-normalized */
    CHS_FIELD_ARM_I = 1,   /* F(x - dx, y) - F(x + dx, y), non-normalized */
    CHS_FIELD_COMBINED = 2 /* normalized joint density */
} chs_field;

CHS_API chs_status chs_photon_field_max(const chs_photon *photon, chs_field field, double *max_abs);
/* `comment` may be NULL; it becomes a leading "# " line in CSV output. */
CHS_API chs_status chs_photon_write_field(const chs_photon *photon, chs_field field, chs_format format,
                                          const char *path, const char *comment);

typedef enum chs_observable {
    CHS_OBS_PATH_I = 0,
    CHS_OBS_PATH_II = 1,
    CHS_OBS_SPIN_PATH_I = 2,
    CHS_OBS_SPIN_PATH_II = 3
} chs_observable;

CHS_API const char *chs_observable_name(chs_observable observable);

typedef struct chs_weak_value_report {
    chs_observable observable;
    double weak_re;
    double weak_im;
    double coupling;
    double predicted_shift;
    int has_simulated; /* nonzero for the two observables read by a pointer */
    double simulated_shift;
    double discrepancy;
} chs_weak_value_report;

/* Reports for all four observables, in chs_observable order. */
CHS_API chs_status chs_photon_weak_values(const chs_photon_config *config, chs_weak_value_report out[4]);

/* ---- neutron: interferometer with a spin analyzer in front of D1 ---- */

typedef enum chs_probe_kind {
    CHS_PROBE_NONE = 0,
    CHS_PROBE_ABSORBER = 1,
    CHS_PROBE_FIELD = 2
} chs_probe_kind;

typedef struct chs_neutron_probe {
    chs_probe_kind kind;
    chs_path path;
    double transmissivity; /* absorber intensity transmission in [0, 1] */
    double alpha;          /* field rotation angle */
} chs_neutron_probe;

typedef struct chs_detector_probabilities {
    double d1;
    double d2;
    double absorbed;
    double rejected;
} chs_detector_probabilities;

typedef struct chs_detector_counts {
    uint64_t d1;
    uint64_t d2;
    uint64_t absorbed;
    uint64_t rejected;
} chs_detector_counts;

CHS_API chs_status chs_neutron_probabilities(const chs_neutron_probe *probe, double chi,
                                             chs_detector_probabilities *out);
CHS_API chs_status chs_sample_counts(const chs_detector_probabilities *p, uint64_t n, uint64_t seed,
                                     chs_detector_counts *out);

typedef struct chs_sweep chs_sweep;

/* `chi_steps` equally spaced phases over [0, 2 pi). */
CHS_API chs_status chs_neutron_sweep_create(const chs_neutron_probe *probe, size_t chi_steps, chs_sweep **out);
CHS_API void chs_sweep_destroy(chs_sweep *sweep);
CHS_API size_t chs_sweep_size(const chs_sweep *sweep);
CHS_API chs_status chs_sweep_row(const chs_sweep *sweep, size_t index, double *chi, chs_detector_probabilities *p);
/* Fitted first-harmonic visibilities and raw (max - min)/(max + min). Raw
 * pointers may be NULL. */
CHS_API chs_status chs_sweep_visibility(const chs_sweep *sweep, double *v_d1, double *v_d2, double *raw_d1,
                                        double *raw_d2);
/* Columns chi, p_d1, p_d2, p_absorbed, p_rejected. With samples > 0, adds
 * n_d1, n_d2, n_absorbed, n_rejected drawn with seed + row index. */
CHS_API chs_status chs_sweep_write_csv(const chs_sweep *sweep, const char *path, const char *comment,
                                       uint64_t samples, uint64_t seed);

/* ---- disturbance ensembles over the photon pipeline ---- */

typedef enum chs_noise {
    CHS_NOISE_PHASE_PRE = 0,
    CHS_NOISE_PHASE_POST = 1,
    CHS_NOISE_AMPLITUDE = 2
} chs_noise;

CHS_API const char *chs_noise_name(chs_noise noise);

typedef struct chs_ensemble_stats {
    uint64_t samples;
    uint64_t null_samples;
    double mean_x;
    double mean_y;
    double stderr_x;
    double stderr_y;
    double density_centroid_x;
    double density_centroid_y;
    double purity;
    double mean_postselection_probability;
} chs_ensemble_stats;

typedef struct chs_ensemble chs_ensemble;

CHS_API chs_status chs_ensemble_run(const chs_photon_config *config, chs_noise noise, double strength,
                                    uint64_t samples, uint64_t seed, chs_ensemble **out);
CHS_API void chs_ensemble_destroy(chs_ensemble *ensemble);
CHS_API chs_status chs_ensemble_stats_get(const chs_ensemble *ensemble, chs_ensemble_stats *out);
/* Averaged joint density on the config grid. */
CHS_API chs_status chs_ensemble_write_density(const chs_ensemble *ensemble, chs_format format, const char *path,
                                              const char *comment);

/* ---- acceptance suite ---- */

#define CHS_VERIFY_TAMPER 1u /* negative control: perturb one coefficient */

typedef struct chs_report chs_report;

CHS_API chs_status chs_verify(uint64_t seed, unsigned flags, chs_report **out);
CHS_API void chs_report_destroy(chs_report *report);
CHS_API const char *chs_report_text(const chs_report *report);
CHS_API int chs_report_all_passed(const chs_report *report);
CHS_API size_t chs_report_size(const chs_report *report);
/* Strings stay valid until the report is destroyed. */
CHS_API chs_status chs_report_criterion(const chs_report *report, size_t index, int *id, int *passed,
                                        const char **name, const char **detail);

#ifdef __cplusplus
}
#endif

#endif /* CHESHIRE_CHESHIRE_H_ */
