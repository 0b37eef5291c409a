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

#include "cirsim/cirsim.h"

#include <cstring>
#include <string>
#include <vector>

#include "cirsim/channel.hpp"
#include "cirsim/commands.hpp"
#include "cirsim/config.hpp"
#include "cirsim/geometry.hpp"
#include "cirsim/phase.hpp"

struct cirsim_config
{
    cirsim::SimConfig value;
};

struct cirsim_geometry
{
    cirsim::CirsGeometry value;
};

namespace
{

thread_local std::string g_last_error;

cirsim_status status_of(cirsim::ErrorCode code)
{
    switch (code)
    {
    case cirsim::ErrorCode::invalid_argument:
        return CIRSIM_ERR_INVALID_ARGUMENT;
    case cirsim::ErrorCode::unknown_key:
        return CIRSIM_ERR_UNKNOWN_KEY;
    case cirsim::ErrorCode::io:
        return CIRSIM_ERR_IO;
    case cirsim::ErrorCode::saturated:
        return CIRSIM_ERR_SATURATED;
    case cirsim::ErrorCode::internal:
        break;
    }
    return CIRSIM_ERR_INTERNAL;
}

cirsim_status set_error(cirsim_status s, std::string what)
{
    g_last_error = std::move(what);
    return s;
}

// Runs fn, translating exceptions into status codes.
template <class Fn> cirsim_status guarded(Fn &&fn)
{
    try
    {
        fn();
        g_last_error.clear();
        return CIRSIM_OK;
    }
    catch (const cirsim::Error &e)
    {
        return set_error(status_of(e.code()), e.what());
    }
    catch (const std::bad_alloc &)
    {
        return set_error(CIRSIM_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return set_error(CIRSIM_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return set_error(CIRSIM_ERR_INTERNAL, "unknown failure");
    }
}

cirsim_status copy_out(const std::string &s, char *buffer, size_t capacity, size_t *needed)
{
    if (needed)
        *needed = s.size() + 1;
    if (!buffer || capacity < s.size() + 1)
        return set_error(CIRSIM_ERR_BUFFER_TOO_SMALL, "output buffer too small");
    std::memcpy(buffer, s.c_str(), s.size() + 1);
    return CIRSIM_OK;
}

const std::vector<std::string> &key_names()
{
    static const std::vector<std::string> keys = cirsim::config_keys();
    return keys;
}

const std::vector<std::string> &key_helps()
{
    static const std::vector<std::string> helps = [] {
        std::vector<std::string> h;
        for (const auto &k : key_names())
            h.push_back(cirsim::config_key_help(k));
        return h;
    }();
    return helps;
}

const std::vector<std::string> &commands()
{
    static const std::vector<std::string> names = cirsim::command_names();
    return names;
}

#define CIRSIM_REQUIRE(ptr)                                                                                            \
    do                                                                                                                 \
    {                                                                                                                  \
        if (!(ptr))                                                                                                    \
            return set_error(CIRSIM_ERR_NULL_POINTER, #ptr " must not be NULL");                                       \
    } while (0)

std::vector<double> wrap_buffer(const double *phases, size_t n)
{
    return phases ? std::vector<double>(phases, phases + n) : std::vector<double>(n, 0.0);
}

} // namespace

extern "C" {

const char *cirsim_version(void) { return CIRSIM_VERSION_STRING; }

const char *cirsim_status_string(cirsim_status status)
{
    switch (status)
    {
    case CIRSIM_OK:
        return "ok";
    case CIRSIM_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case CIRSIM_ERR_UNKNOWN_KEY:
        return "unknown key";
    case CIRSIM_ERR_IO:
        return "i/o error";
    case CIRSIM_ERR_SATURATED:
        return "saturated";
    case CIRSIM_ERR_NULL_POINTER:
        return "null pointer";
    case CIRSIM_ERR_BUFFER_TOO_SMALL:
        return "buffer too small";
    case CIRSIM_ERR_INTERNAL:
        return "internal error";
    }
    return "unrecognized status";
}

const char *cirsim_last_error(void) { return g_last_error.c_str(); }

cirsim_status cirsim_config_create(cirsim_config **out)
{
    CIRSIM_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new cirsim_config{}; });
}

void cirsim_config_destroy(cirsim_config *config) { delete config; }

cirsim_status cirsim_config_load_file(cirsim_config *config, const char *path)
{
    CIRSIM_REQUIRE(config);
    CIRSIM_REQUIRE(path);
    // Stage into a copy so a bad file leaves the handle untouched.
    return guarded([&] {
        cirsim::SimConfig tmp = config->value;
        cirsim::config_load_file(tmp, path);
        config->value = tmp;
    });
}

cirsim_status cirsim_config_apply_env(cirsim_config *config)
{
    CIRSIM_REQUIRE(config);
    return guarded([&] {
        cirsim::SimConfig tmp = config->value;
        cirsim::config_apply_env(tmp);
        config->value = tmp;
    });
}

cirsim_status cirsim_config_set(cirsim_config *config, const char *key, const char *value)
{
    CIRSIM_REQUIRE(config);
    CIRSIM_REQUIRE(key);
    CIRSIM_REQUIRE(value);
    return guarded([&] { cirsim::config_set(config->value, key, value); });
}

cirsim_status cirsim_config_get(const cirsim_config *config, const char *key, char *buffer, size_t capacity,
                                size_t *needed)
{
    CIRSIM_REQUIRE(config);
    CIRSIM_REQUIRE(key);
    std::string text;
    const cirsim_status s = guarded([&] { text = cirsim::config_get(config->value, key); });
    return s == CIRSIM_OK ? copy_out(text, buffer, capacity, needed) : s;
}

cirsim_status cirsim_config_to_json(const cirsim_config *config, char *buffer, size_t capacity, size_t *needed)
{
    CIRSIM_REQUIRE(config);
    std::string text;
    const cirsim_status s = guarded([&] { text = cirsim::config_to_json(config->value).dump(2); });
    return s == CIRSIM_OK ? copy_out(text, buffer, capacity, needed) : s;
}

cirsim_status cirsim_config_validate(const cirsim_config *config)
{
    CIRSIM_REQUIRE(config);
    return guarded([&] { config->value.validate(); });
}

size_t cirsim_config_key_count(void) { return key_names().size(); }

const char *cirsim_config_key_name(size_t index)
{
    return index < key_names().size() ? key_names()[index].c_str() : nullptr;
}

const char *cirsim_config_key_help(size_t index)
{
    return index < key_helps().size() ? key_helps()[index].c_str() : nullptr;
}

size_t cirsim_command_count(void) { return commands().size(); }

const char *cirsim_command_name(size_t index) { return index < commands().size() ? commands()[index].c_str() : nullptr; }

cirsim_status cirsim_run(const cirsim_config *config, const char *subcommand, const char *out_dir)
{
    CIRSIM_REQUIRE(config);
    CIRSIM_REQUIRE(subcommand);
    CIRSIM_REQUIRE(out_dir);
    return guarded([&] { cirsim::run_command(config->value, subcommand, out_dir); });
}

cirsim_status cirsim_geometry_create(int M, int N, double radius, double d_m, double d_n, cirsim_geometry **out)
{
    CIRSIM_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new cirsim_geometry{cirsim::CirsGeometry::build(M, N, radius, d_m, d_n)}; });
}

void cirsim_geometry_destroy(cirsim_geometry *geometry) { delete geometry; }

cirsim_status cirsim_geometry_size(const cirsim_geometry *geometry, size_t *out)
{
    CIRSIM_REQUIRE(geometry);
    CIRSIM_REQUIRE(out);
    *out = geometry->value.size();
    return CIRSIM_OK;
}

cirsim_status cirsim_geometry_area(const cirsim_geometry *geometry, double *out)
{
    CIRSIM_REQUIRE(geometry);
    CIRSIM_REQUIRE(out);
    *out = cirsim::surface_area(geometry->value);
    return CIRSIM_OK;
}

cirsim_status cirsim_geometry_element(const cirsim_geometry *geometry, size_t index, double *position,
                                      double *normal, double *psi)
{
    CIRSIM_REQUIRE(geometry);
    if (index >= geometry->value.size())
        return set_error(CIRSIM_ERR_INVALID_ARGUMENT, "element index out of range");
    const cirsim::Element e = geometry->value.element(index);
    if (position)
    {
        position[0] = e.position.x;
        position[1] = e.position.y;
        position[2] = e.position.z;
    }
    if (normal)
    {
        normal[0] = e.normal.x;
        normal[1] = e.normal.y;
        normal[2] = e.normal.z;
    }
    if (psi)
        *psi = e.psi;
    return CIRSIM_OK;
}

cirsim_status cirsim_phase_profile(const cirsim_geometry *geometry, const char *kind, double theta_i, double phi_i,
                                   double theta_o, double phi_o, double theta_bar, double lambda, double *out,
                                   size_t capacity)
{
    CIRSIM_REQUIRE(geometry);
    CIRSIM_REQUIRE(kind);
    CIRSIM_REQUIRE(out);
    const auto &g = geometry->value;
    if (capacity < g.size())
        return set_error(CIRSIM_ERR_BUFFER_TOO_SMALL, "phase buffer smaller than the element count");
    if (!(lambda > 0.0))
        return set_error(CIRSIM_ERR_INVALID_ARGUMENT, "lambda must be positive");
    return guarded([&] {
        const cirsim::AnglePair inc{theta_i, phi_i}, refl{theta_o, phi_o};
        const std::string k = kind;
        cirsim::PhaseProfile p;
        if (k == "optimal")
            p = cirsim::optimal_phase(g, inc, refl, lambda);
        else if (k == "planar")
            p = cirsim::planar_phase(g.rows(), g.cols(), g.spacing_m(), g.spacing_n(), inc, refl, lambda);
        else if (k == "elevation")
            p = cirsim::elevation_phase(g, phi_i, phi_o, lambda);
        else if (k == "perpendicular")
            p = cirsim::perpendicular_phase(g, lambda);
        else if (k == "preconfigured")
            p = cirsim::preconfigured_phase(g, theta_bar, lambda);
        else if (k == "azimuth")
            p = cirsim::azimuth_phase(g, theta_i, theta_o, lambda);
        else
            cirsim::fail("unknown phase profile kind '" + k + "'");
        std::copy(p.phases().begin(), p.phases().end(), out);
    });
}

cirsim_status cirsim_reflected_elevation(double phi_i, double psi, double *phi_o, int *evanescent)
{
    CIRSIM_REQUIRE(phi_o);
    CIRSIM_REQUIRE(evanescent);
    const auto r = cirsim::reflected_elevation(phi_i, psi);
    *evanescent = r ? 0 : 1;
    if (r)
        *phi_o = *r;
    return CIRSIM_OK;
}

cirsim_status cirsim_gain_elevation(const cirsim_geometry *geometry, const double *phases, double phi_i,
                                    double phi_o, double lambda, double q, double *out_db)
{
    CIRSIM_REQUIRE(geometry);
    CIRSIM_REQUIRE(out_db);
    return guarded([&] {
        const auto &g = geometry->value;
        const auto p = cirsim::PhaseProfile::from_raw(g.rows(), g.cols(), wrap_buffer(phases, g.size()));
        *out_db = cirsim::channel_gain_elevation(g, p, phi_i, phi_o, lambda, q);
    });
}

cirsim_status cirsim_gain_azimuth(const cirsim_geometry *geometry, const double *phases, double theta_i,
                                  double lambda, double q, double *out_db)
{
    CIRSIM_REQUIRE(geometry);
    CIRSIM_REQUIRE(out_db);
    return guarded([&] {
        const auto &g = geometry->value;
        const auto p = cirsim::PhaseProfile::from_raw(g.rows(), g.cols(), wrap_buffer(phases, g.size()));
        *out_db = cirsim::channel_gain_azimuth(g, p, theta_i, lambda, q);
    });
}

} // extern "C"
