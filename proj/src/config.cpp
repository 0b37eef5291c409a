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

#include "cirsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <variant>

#include "cirsim/types.hpp"

extern char **environ;

namespace cirsim
{

namespace
{

enum class Unit
{
    none,
    dB,
    dBm
};

using Member = std::variant<int SimConfig::*, long SimConfig::*, std::uint64_t SimConfig::*, double SimConfig::*,
                            std::string SimConfig::*, std::vector<double> SimConfig::*>;

struct KeySpec
{
    const char *name;
    Member member;
    Unit unit;
    const char *help;
};

const std::vector<KeySpec> &registry()
{
    using S = SimConfig;
    static const std::vector<KeySpec> keys = {
        {"freq_ghz", &S::freq_ghz, Unit::none, "carrier frequency, GHz"},
        {"K", &S::K, Unit::none, "antennas per ULA"},
        {"Mx", &S::Mx, Unit::none, "metasurface elements along the curved direction (even)"},
        {"Ny", &S::Ny, Unit::none, "metasurface elements along the cylinder axis"},
        {"element_spacing_lambda", &S::element_spacing_lambda, Unit::none, "element spacing d_m = d_n, wavelengths"},
        {"antenna_spacing_lambda", &S::antenna_spacing_lambda, Unit::none, "ULA spacing, wavelengths"},
        {"radii_m", &S::radii_m, Unit::none, "door curvature radii swept by experiments, m"},
        {"R_m", &S::R_m, Unit::none, "curvature radius for single-surface commands, m"},
        {"theta_bar_deg", &S::theta_bar_deg, Unit::none, "C-IRS design azimuth, deg"},
        {"signal_power", &S::signal_power_dbm, Unit::dBm, "transmit power sigma_s^2"},
        {"noise_power", &S::noise_power_dbm, Unit::dBm, "noise power sigma_n^2"},
        {"q", &S::q, Unit::none, "element pattern exponent"},
        {"sigma_sh", &S::sigma_sh_db, Unit::dB, "shadowing standard deviation"},
        {"mu_b1", &S::mu_b1_db, Unit::dB, "mean attenuation of one blocker"},
        {"mu_b_step", &S::mu_b_step_db, Unit::dB, "extra mean attenuation per additional blocker"},
        {"sigma_b", &S::sigma_b_db, Unit::dB, "blockage attenuation standard deviation"},
        {"lanes", &S::lanes, Unit::none, "number of lanes"},
        {"lane_width", &S::lane_width, Unit::none, "lane width, m"},
        {"road_length", &S::road_length, Unit::none, "road segment length, m"},
        {"vehicle_length", &S::vehicle_length, Unit::none, "vehicle length, m"},
        {"vehicle_width", &S::vehicle_width, Unit::none, "vehicle width, m"},
        {"vehicle_height", &S::vehicle_height, Unit::none, "vehicle height (array height), m"},
        {"door_height", &S::door_height, Unit::none, "door metasurface centre height, m"},
        {"tx_placement", &S::tx_placement, Unit::none, "TxV position: start | center"},
        {"max_range", &S::max_range, Unit::none, "C-RIS candidate range, m"},
        {"rho", &S::rho, Unit::none, "traffic density for single-scene commands, vehicles/km/lane"},
        {"r_d", &S::r_d, Unit::none, "TxV-RxV distance for single-scene commands, m"},
        {"rho_list", &S::rho_list, Unit::none, "blockage sweep densities, vehicles/km/lane"},
        {"rd_list", &S::rd_list, Unit::none, "TxV-RxV distances swept, m"},
        {"snr_rho_list", &S::snr_rho_list, Unit::none, "SNR ECDF densities, vehicles/km/lane"},
        {"trials", &S::trials, Unit::none, "geometric trials per blockage point / angle-pdf scenes"},
        {"snr_trials", &S::snr_trials, Unit::none, "full-channel trials per SNR configuration"},
        {"reduced_elements", &S::reduced_elements, Unit::none,
         "SNR runs: elements per axis in reduced mode (0 = full Mx x Ny)"},
        {"bootstrap_resamples", &S::bootstrap_resamples, Unit::none, "bootstrap resamples for median CIs"},
        {"pdf_bins", &S::pdf_bins, Unit::none, "histogram bins for angle PDFs"},
        {"area_m2", &S::area_m2, Unit::none, "metasurface area for gain figures, m^2"},
        {"gain_step_deg", &S::gain_step_deg, Unit::none, "angular step of gain sweeps, deg"},
        {"gain_theta_bar_deg", &S::gain_theta_bar_deg, Unit::none, "design azimuth of the azimuth gain sweep, deg"},
        {"gain_freqs_ghz", &S::gain_freqs_ghz, Unit::none, "frequencies of the frequency sweep, GHz"},
        {"phase_kind", &S::phase_kind, Unit::none,
         "phase-dump profile: optimal | planar | elevation | perpendicular | preconfigured | azimuth"},
        {"theta_i_deg", &S::theta_i_deg, Unit::none, "phase-dump incidence azimuth, deg"},
        {"phi_i_deg", &S::phi_i_deg, Unit::none, "phase-dump incidence elevation, deg"},
        {"theta_o_deg", &S::theta_o_deg, Unit::none, "phase-dump reflection azimuth, deg"},
        {"phi_o_deg", &S::phi_o_deg, Unit::none, "phase-dump reflection elevation, deg"},
        {"seed", &S::seed, Unit::none, "master RNG seed"},
        {"threads", &S::threads, Unit::none, "worker threads (0 = hardware concurrency)"},
    };
    return keys;
}

const KeySpec &lookup(std::string_view key)
{
    for (const auto &k : registry())
        if (key == k.name)
            return k;
    fail("unknown config key '" + std::string(key) + "'", ErrorCode::unknown_key);
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const char *unit_name(Unit u) { return u == Unit::dBm ? "dBm" : "dB"; }

double parse_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        fail("config key '" + std::string(key) + "': expected a number, got '" + std::string(text) + "'");
    return v;
}

template <class Int> Int parse_int(std::string_view key, std::string_view text)
{
    text = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        fail("config key '" + std::string(key) + "': expected an integer, got '" + std::string(text) + "'");
    return v;
}

double parse_with_unit(std::string_view key, std::string_view text, Unit unit)
{
    text = trim(text);
    const std::string_view want = unit_name(unit);
    if (text.size() <= want.size() || text.substr(text.size() - want.size()) != want)
        fail("config key '" + std::string(key) + "': value must carry the unit " + std::string(want) +
             " (e.g. \"3 " + std::string(want) + "\"), got '" + std::string(text) + "'");
    return parse_double(key, text.substr(0, text.size() - want.size()));
}

std::vector<double> parse_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    text = trim(text);
    while (!text.empty())
    {
        const auto comma = text.find(',');
        out.push_back(parse_double(key, text.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string key_to_env(std::string_view key)
{
    std::string env = kEnvPrefix;
    for (char c : key)
        env.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return env;
}

void require(bool ok, const char *field, const std::string &what)
{
    if (!ok)
        fail(std::string("config key '") + field + "': " + what);
}

void require_list(const std::vector<double> &v, const char *field, bool allow_zero)
{
    require(!v.empty(), field, "list must not be empty");
    for (double x : v)
        require(allow_zero ? x >= 0.0 : x > 0.0, field, allow_zero ? "entries must be >= 0" : "entries must be > 0");
}

} // namespace

std::vector<std::string> config_keys()
{
    std::vector<std::string> out;
    for (const auto &k : registry())
        out.emplace_back(k.name);
    return out;
}

std::string config_key_help(std::string_view key)
{
    const KeySpec &k = lookup(key);
    std::string h = k.help;
    if (k.unit != Unit::none)
        h += std::string(" (") + unit_name(k.unit) + ")";
    return h;
}

void config_set(SimConfig &config, std::string_view key, std::string_view value)
{
    const KeySpec &spec = lookup(key);
    std::visit(
        [&](auto member) {
            using T = std::remove_reference_t<decltype(config.*member)>;
            if constexpr (std::is_same_v<T, double>)
                config.*member = spec.unit == Unit::none ? parse_double(key, value)
                                                         : parse_with_unit(key, value, spec.unit);
            else if constexpr (std::is_same_v<T, std::string>)
                config.*member = std::string(trim(value));
            else if constexpr (std::is_same_v<T, std::vector<double>>)
                config.*member = parse_list(key, value);
            else
                config.*member = parse_int<T>(key, value);
        },
        spec.member);
}

std::string config_get(const SimConfig &config, std::string_view key)
{
    const KeySpec &spec = lookup(key);
    return std::visit(
        [&](auto member) -> std::string {
            using T = std::remove_cvref_t<decltype(config.*member)>;
            const T &v = config.*member;
            if constexpr (std::is_same_v<T, double>)
                return spec.unit == Unit::none ? format_double(v) : format_double(v) + " " + unit_name(spec.unit);
            else if constexpr (std::is_same_v<T, std::string>)
                return v;
            else if constexpr (std::is_same_v<T, std::vector<double>>)
            {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i)
                    s += (i ? "," : "") + format_double(v[i]);
                return s;
            }
            else
                return std::to_string(v);
        },
        spec.member);
}

void config_merge_json(SimConfig &config, const nlohmann::json &doc)
{
    if (!doc.is_object())
        fail("config file: top level must be a JSON object");
    for (const auto &[key, value] : doc.items())
    {
        const KeySpec &spec = lookup(key);
        std::visit(
            [&](auto member) {
                using T = std::remove_reference_t<decltype(config.*member)>;
                const std::string where = "config key '" + key + "'";
                if constexpr (std::is_same_v<T, double>)
                {
                    if (spec.unit != Unit::none)
                    {
                        if (!value.is_string())
                            fail(where + ": dB quantities must be strings with a unit, e.g. \"3 " +
                                 std::string(unit_name(spec.unit)) + "\"");
                        config.*member = parse_with_unit(key, value.get<std::string>(), spec.unit);
                    }
                    else
                    {
                        if (!value.is_number())
                            fail(where + ": expected a number");
                        config.*member = value.get<double>();
                    }
                }
                else if constexpr (std::is_same_v<T, std::string>)
                {
                    if (!value.is_string())
                        fail(where + ": expected a string");
                    config.*member = value.get<std::string>();
                }
                else if constexpr (std::is_same_v<T, std::vector<double>>)
                {
                    if (!value.is_array())
                        fail(where + ": expected an array of numbers");
                    std::vector<double> v;
                    for (const auto &x : value)
                    {
                        if (!x.is_number())
                            fail(where + ": expected an array of numbers");
                        v.push_back(x.get<double>());
                    }
                    config.*member = std::move(v);
                }
                else
                {
                    if (!value.is_number_integer())
                        fail(where + ": expected an integer");
                    if constexpr (std::is_unsigned_v<T>)
                    {
                        if (value.is_number_unsigned())
                            config.*member = value.get<T>();
                        else if (value.get<long long>() >= 0)
                            config.*member = static_cast<T>(value.get<long long>());
                        else
                            fail(where + ": must be non-negative");
                    }
                    else
                        config.*member = value.get<T>();
                }
            },
            spec.member);
    }
}

void config_load_file(SimConfig &config, const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        fail("cannot open config file '" + path + "'", ErrorCode::io);
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        fail("config file '" + path + "': " + e.what());
    }
    config_merge_json(config, doc);
}

void config_apply_env(SimConfig &config)
{
    const std::string_view prefix = kEnvPrefix;
    std::vector<std::pair<std::string, std::string>> found;
    for (char **e = environ; e && *e; ++e)
    {
        const std::string_view entry = *e;
        if (entry.substr(0, prefix.size()) != prefix)
            continue;
        const auto eq = entry.find('=');
        found.emplace_back(std::string(entry.substr(0, eq)),
                           eq == std::string_view::npos ? "" : std::string(entry.substr(eq + 1)));
    }
    for (const auto &[name, value] : found)
    {
        const KeySpec *match = nullptr;
        for (const auto &k : registry())
            if (key_to_env(k.name) == name)
                match = &k;
        if (!match)
            fail("unknown environment override '" + name + "'", ErrorCode::unknown_key);
        config_set(config, match->name, value);
    }
}

nlohmann::ordered_json config_to_json(const SimConfig &config)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto &spec : registry())
        std::visit(
            [&](auto member) {
                using T = std::remove_cvref_t<decltype(config.*member)>;
                if constexpr (std::is_same_v<T, double>)
                {
                    if (spec.unit != Unit::none)
                        out[spec.name] = config_get(config, spec.name);
                    else
                        out[spec.name] = config.*member;
                }
                else
                    out[spec.name] = config.*member;
            },
            spec.member);
    return out;
}

double SimConfig::lambda() const { return wavelength_from_frequency(freq_ghz * 1e9); }

void SimConfig::validate() const
{
    require(freq_ghz > 0.0, "freq_ghz", "must be positive");
    require(K >= 1, "K", "must be >= 1");
    require(Mx >= 2 && Mx % 2 == 0, "Mx", "must be even and >= 2");
    require(Ny >= 1, "Ny", "must be >= 1");
    require(element_spacing_lambda > 0.0, "element_spacing_lambda", "must be positive");
    require(antenna_spacing_lambda > 0.0, "antenna_spacing_lambda", "must be positive");
    require_list(radii_m, "radii_m", false);
    require(R_m > 0.0, "R_m", "must be positive");
    for (double R : radii_m)
        require(element_spacing_lambda * lambda() < 2.0 * R, "radii_m", "element spacing must be below 2R");
    require(element_spacing_lambda * lambda() < 2.0 * R_m, "R_m", "element spacing must be below 2R");
    require(theta_bar_deg >= 0.0 && theta_bar_deg <= 90.0, "theta_bar_deg", "must lie in [0, 90]");
    require(gain_theta_bar_deg >= 0.0 && gain_theta_bar_deg <= 90.0, "gain_theta_bar_deg", "must lie in [0, 90]");
    require(q > 0.0, "q", "must be positive");
    require(sigma_sh_db >= 0.0, "sigma_sh", "must be >= 0 dB");
    require(sigma_b_db >= 0.0, "sigma_b", "must be >= 0 dB");
    require(lanes >= 1, "lanes", "must be >= 1");
    require(lane_width > 0.0, "lane_width", "must be positive");
    require(road_length > 0.0, "road_length", "must be positive");
    require(vehicle_length > 0.0 && vehicle_length < road_length, "vehicle_length", "must be in (0, road_length)");
    require(vehicle_width > 0.0 && vehicle_width <= lane_width, "vehicle_width", "must be in (0, lane_width]");
    require(vehicle_height > 0.0, "vehicle_height", "must be positive");
    require(door_height > 0.0, "door_height", "must be positive");
    require(tx_placement == "start" || tx_placement == "center", "tx_placement", "must be 'start' or 'center'");
    require(max_range > 0.0, "max_range", "must be positive");
    require(rho >= 0.0, "rho", "must be >= 0");
    require(r_d > vehicle_length, "r_d", "must exceed vehicle_length");
    require_list(rho_list, "rho_list", true);
    require_list(snr_rho_list, "snr_rho_list", true);
    require_list(rd_list, "rd_list", false);
    for (double d : rd_list)
        require(d > vehicle_length, "rd_list", "entries must exceed vehicle_length");
    require(trials >= 1, "trials", "must be >= 1");
    require(snr_trials >= 1, "snr_trials", "must be >= 1");
    require(reduced_elements == 0 || (reduced_elements >= 2 && reduced_elements % 2 == 0), "reduced_elements",
            "must be 0 or an even count >= 2");
    require(bootstrap_resamples >= 1, "bootstrap_resamples", "must be >= 1");
    require(pdf_bins >= 1, "pdf_bins", "must be >= 1");
    require(area_m2 > 0.0, "area_m2", "must be positive");
    require(gain_step_deg > 0.0 && gain_step_deg <= 10.0, "gain_step_deg", "must lie in (0, 10]");
    require_list(gain_freqs_ghz, "gain_freqs_ghz", false);
    static const char *kinds[] = {"optimal", "planar", "elevation", "perpendicular", "preconfigured", "azimuth"};
    require(std::find(std::begin(kinds), std::end(kinds), phase_kind) != std::end(kinds), "phase_kind",
            "unknown profile kind '" + phase_kind + "'");
    require(threads >= 0, "threads", "must be >= 0");
}

} // namespace cirsim
