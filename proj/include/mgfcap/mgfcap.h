// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The mgfcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the capacity library. Every call returns a status code;
 * on failure mgfcap_last_error() describes it (per thread). */
#ifndef MGFCAP_MGFCAP_H
#define MGFCAP_MGFCAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(MGFCAP_BUILDING_LIBRARY)
#define MGFCAP_API __attribute__((visibility("default")))
#else
#define MGFCAP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mgfcap_status {
    MGFCAP_OK = 0,
    MGFCAP_E_DOMAIN = 1,      /* argument outside the function's domain */
    MGFCAP_E_POLE = 2,        /* evaluation hit a pole */
    MGFCAP_E_PARAMETER = 3,   /* invalid model or configuration */
    MGFCAP_E_CONVERGENCE = 4, /* quadrature or series did not converge */
    MGFCAP_E_UNSUPPORTED = 5, /* operation not available for this model */
    MGFCAP_E_NULL = 6,        /* required pointer was NULL */
    MGFCAP_E_INTERNAL = 7
} mgfcap_status;

typedef enum mgfcap_combiner_kind { MGFCAP_EGC = 0, MGFCAP_MRC = 1 } mgfcap_combiner_kind;

typedef enum mgfcap_method {
    MGFCAP_METHOD_ADAPTIVE = 0,
    MGFCAP_METHOD_GCQ = 1,
    MGFCAP_METHOD_CLOSED_FORM = 2,
    MGFCAP_METHOD_MONTE_CARLO = 3
} mgfcap_method;

typedef struct mgfcap_model mgfcap_model;

typedef struct mgfcap_combiner_spec {
    mgfcap_combiner_kind kind;
    int L;
    double snr;       /* E_s/N_0, linear */
    double bandwidth; /* W; 1 gives bits/s/Hz */
} mgfcap_combiner_spec;

typedef struct mgfcap_integration {
    mgfcap_method method; /* ADAPTIVE or GCQ */
    int gcq_n;
    int gcq_literal; /* nonzero: GCQ nodes applied in s directly */
    double rel_tol;
} mgfcap_integration;

typedef struct mgfcap_capacity_point {
    double value;
    mgfcap_method method;
    double error_estimate;
} mgfcap_capacity_point;

typedef struct mgfcap_sim_result {
    double mean;
    double std_error;
    uint64_t n_samples;
} mgfcap_sim_result;

typedef enum mgfcap_aux_path { MGFCAP_AUX_DIRECT = 0, MGFCAP_AUX_FOX = 1, MGFCAP_AUX_MEIJER = 2 } mgfcap_aux_path;

MGFCAP_API const char* mgfcap_version(void);
MGFCAP_API const char* mgfcap_last_error(void);
MGFCAP_API const char* mgfcap_status_name(mgfcap_status status);

/* Model from a family name and key/value parameters, e.g. family
 * "shadowed_gnm" with keys m, xi, m_s, omega_s. */
MGFCAP_API mgfcap_status mgfcap_model_create(const char* family, const char* const* keys, const double* values,
                                             size_t count, mgfcap_model** out);
MGFCAP_API void mgfcap_model_destroy(mgfcap_model* model);
/* The returned string lives as long as the model. */
MGFCAP_API mgfcap_status mgfcap_model_family(const mgfcap_model* model, const char** out);
MGFCAP_API int mgfcap_model_sampleable(const mgfcap_model* model);

MGFCAP_API mgfcap_status mgfcap_pdf(const mgfcap_model* model, double r, double* out);
/* M(s) = E[exp(-s R^p)] and dM/ds; either output may be NULL. */
MGFCAP_API mgfcap_status mgfcap_mgf(const mgfcap_model* model, double s, int p, double* mgf, double* dmgf);
MGFCAP_API mgfcap_status mgfcap_mgf_oracle(const mgfcap_model* model, double s, int p, double* out);
MGFCAP_API mgfcap_status mgfcap_moment(const mgfcap_model* model, double k, double* out);

MGFCAP_API mgfcap_status mgfcap_aux_c(int q, double s, mgfcap_aux_path path, double* out);

MGFCAP_API void mgfcap_integration_default(mgfcap_integration* mode);

/* models holds comb->L handles, one per branch. mode may be NULL. */
MGFCAP_API mgfcap_status mgfcap_capacity(const mgfcap_model* const* models, const mgfcap_combiner_spec* comb,
                                         const mgfcap_integration* mode, mgfcap_capacity_point* out);

/* Joint MGF of sum R_l^p at x and its x-derivative; return nonzero to abort. */
typedef int (*mgfcap_joint_mgf_fn)(void* user, double x, double* mgf, double* dmgf);
MGFCAP_API mgfcap_status mgfcap_capacity_joint(mgfcap_joint_mgf_fn fn, void* user, const mgfcap_combiner_spec* comb,
                                               const mgfcap_integration* mode, mgfcap_capacity_point* out);

MGFCAP_API mgfcap_status mgfcap_capacity_nakagami_closed(double m, int L, double gamma_bar, double bandwidth,
                                                         mgfcap_capacity_point* out);
MGFCAP_API mgfcap_status mgfcap_jensen_bound(const mgfcap_model* const* models, const mgfcap_combiner_spec* comb,
                                             double* out);

/* batch = 0 picks a divisor of n_samples. */
MGFCAP_API mgfcap_status mgfcap_simulate(const mgfcap_model* const* models, const mgfcap_combiner_spec* comb,
                                         uint64_t n_samples, uint64_t seed, uint64_t batch, int workers,
                                         mgfcap_sim_result* out);

typedef void (*mgfcap_selftest_fn)(void* user, const char* name, double measured, double tolerance, int passed);
/* all_passed (required) receives 1 when every check passes. fn may be NULL. */
MGFCAP_API mgfcap_status mgfcap_selftest(double tolerance_scale, mgfcap_selftest_fn fn, void* user,
                                         int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
