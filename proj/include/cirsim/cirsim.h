// SPDX-License-Identifier: Apache-2.0
//
// cirsim: conformal metasurface relays for mmWave V2V links
// Copyright (C) 2026 cirsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/* Public C interface of libcirsim. Every call returns a cirsim_status; on
 * failure cirsim_last_error() describes the problem (per thread). Handles are
 * opaque and owned by the caller, who must release them with the matching
 * *_destroy function. */

#ifndef CIRSIM_CIRSIM_H
#define CIRSIM_CIRSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(CIRSIM_BUILDING_LIBRARY)
#define CIRSIM_API __attribute__((visibility("default")))
#else
#define CIRSIM_API
#endif

typedef enum cirsim_status
{
    CIRSIM_OK = 0,
    CIRSIM_ERR_INVALID_ARGUMENT = 1,
    CIRSIM_ERR_UNKNOWN_KEY = 2,
    CIRSIM_ERR_IO = 3,
    CIRSIM_ERR_SATURATED = 4,
    CIRSIM_ERR_NULL_POINTER = 5,
    CIRSIM_ERR_BUFFER_TOO_SMALL = 6,
    CIRSIM_ERR_INTERNAL = 7
} cirsim_status;

typedef struct cirsim_config cirsim_config;
typedef struct cirsim_geometry cirsim_geometry;

CIRSIM_API const char *cirsim_version(void);
CIRSIM_API const char *cirsim_status_string(cirsim_status status);
/* Message of the last failed call on this thread; "" if none. */
CIRSIM_API const char *cirsim_last_error(void);

/* ---- configuration ---------------------------------------------------- */

CIRSIM_API cirsim_status cirsim_config_create(cirsim_config **out);
CIRSIM_API void cirsim_config_destroy(cirsim_config *config);
CIRSIM_API cirsim_status cirsim_config_load_file(cirsim_config *config, const char *path);
/* Applies CIRSIM_<KEY> environment variables. */
CIRSIM_API cirsim_status cirsim_config_apply_env(cirsim_config *config);
CIRSIM_API cirsim_status cirsim_config_set(cirsim_config *config, const char *key, const char *value);
/* String outputs follow one convention: `needed` (optional) receives the
 * size including the terminating NUL; CIRSIM_ERR_BUFFER_TOO_SMALL if
 * `capacity` is smaller. */
CIRSIM_API cirsim_status cirsim_config_get(const cirsim_config *config, const char *key, char *buffer,
                                           size_t capacity, size_t *needed);
CIRSIM_API cirsim_status cirsim_config_to_json(const cirsim_config *config, char *buffer, size_t capacity,
                                               size_t *needed);
CIRSIM_API cirsim_status cirsim_config_validate(const cirsim_config *config);

CIRSIM_API size_t cirsim_config_key_count(void);
/* NULL when index is out of range. Strings live as long as the library. */
CIRSIM_API const char *cirsim_config_key_name(size_t index);
CIRSIM_API const char *cirsim_config_key_help(size_t index);

CIRSIM_API size_t cirsim_command_count(void);
CIRSIM_API const char *cirsim_command_name(size_t index);

/* Runs a subcommand, writing CSV/JSON outputs plus sidecars into out_dir. */
CIRSIM_API cirsim_status cirsim_run(const cirsim_config *config, const char *subcommand, const char *out_dir);

/* ---- geometry and phase ----------------------------------------------- */

CIRSIM_API cirsim_status cirsim_geometry_create(int M, int N, double radius, double d_m, double d_n,
                                                cirsim_geometry **out);
CIRSIM_API void cirsim_geometry_destroy(cirsim_geometry *geometry);
CIRSIM_API cirsim_status cirsim_geometry_size(const cirsim_geometry *geometry, size_t *out);
CIRSIM_API cirsim_status cirsim_geometry_area(const cirsim_geometry *geometry, double *out);
/* position[3], normal[3] and psi may each be NULL. */
CIRSIM_API cirsim_status cirsim_geometry_element(const cirsim_geometry *geometry, size_t index, double *position,
                                                 double *normal, double *psi);

/* kind: "optimal", "planar", "elevation", "perpendicular", "preconfigured",
 * "azimuth". Angles in radians; phases (wrapped to [0, 2 pi)) are written to
 * out[0 .. size). */
CIRSIM_API cirsim_status cirsim_phase_profile(const cirsim_geometry *geometry, const char *kind, double theta_i,
                                              double phi_i, double theta_o, double phi_o, double theta_bar,
                                              double lambda, double *out, size_t capacity);

/* *evanescent is set to 1 (and *phi_o left untouched) when no propagating
 * reflected wave exists. */
CIRSIM_API cirsim_status cirsim_reflected_elevation(double phi_i, double psi, double *phi_o, int *evanescent);

/* Normalized gain in dB; phases may be NULL for an unconfigured surface. */
CIRSIM_API cirsim_status cirsim_gain_elevation(const cirsim_geometry *geometry, const double *phases, double phi_i,
                                               double phi_o, double lambda, double q, double *out_db);
CIRSIM_API cirsim_status cirsim_gain_azimuth(const cirsim_geometry *geometry, const double *phases, double theta_i,
                                             double lambda, double q, double *out_db);

#ifdef __cplusplus
}
#endif

#endif
