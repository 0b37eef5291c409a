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

#ifndef CIRSIM_TYPES_HPP
#define CIRSIM_TYPES_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cirsim
{

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

inline double wavelength_from_frequency(double freq_hz) { return kSpeedOfLight / freq_hz; }
inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Error categories surfaced through the C API as status codes.
enum class ErrorCode
{
    invalid_argument,
    unknown_key,
    io,
    saturated,
    internal
};

class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(const std::string &what, ErrorCode code = ErrorCode::invalid_argument)
{
    throw Error(code, what);
}

// Global frame: y = travel direction, x = cross-motion, z = vertical. Meters.
struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr bool operator==(const Vec3 &) const = default;

    constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3 &o) const
    {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const { return *this / norm(); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

// Direction as azimuth theta in (-pi, pi] and elevation phi from +z in [0, pi].
struct AnglePair
{
    double theta = 0.0;
    double phi = kPi / 2;
};

// Unit vector [sin(phi) cos(theta), sin(phi) sin(theta), cos(phi)].
inline Vec3 unit_vector(const AnglePair &a)
{
    const double s = std::sin(a.phi);
    return {s * std::cos(a.theta), s * std::sin(a.theta), std::cos(a.phi)};
}

inline AnglePair angles_of(const Vec3 &dir)
{
    const double r = dir.norm();
    double c = dir.z / r;
    c = c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
    double theta = std::atan2(dir.y, dir.x);
    if (theta <= -kPi)
        theta = kPi;
    return {theta, std::acos(c)};
}

// Rotation about +z by yaw.
inline Vec3 rotate_z(const Vec3 &v, double yaw)
{
    const double c = std::cos(yaw), s = std::sin(yaw);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

} // namespace cirsim

#endif
