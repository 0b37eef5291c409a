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

#ifndef CIRSIM_GEOMETRY_HPP
#define CIRSIM_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "cirsim/types.hpp"

namespace cirsim
{

enum class Side
{
    left,
    right
};

// Yaw that turns the door frame (outward normal +x, cylinder axis +y) into the
// global frame for a lane-parallel vehicle.
inline double side_yaw(Side side) { return side == Side::right ? 0.0 : kPi; }

// Door frame -> global: p = position + Rz(yaw) * local.
struct MountPose
{
    Vec3 position;
    double yaw = 0.0;
};

struct Element
{
    Vec3 position; // global
    double psi = 0.0;
    Vec3 normal; // global, outward from the cylinder axis
};

/// Cylindrical (conformal) metasurface laid out on a car door.
///
/// Rows m = -M/2 .. M/2-1 sit at angular positions psi_m = m * 2 asin(d_m / 2R)
/// along the curved (vertical) coordinate; columns n = 0 .. N-1 run along the
/// cylinder axis with spacing d_n. Row index `row` is m + M/2. Elements are
/// flattened row-major: l = row * N + n.
class CirsGeometry
{
  public:
    static CirsGeometry build(int M, int N, double radius, double d_m, double d_n, MountPose pose = {});

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_); }
    double radius() const { return radius_; }
    double spacing_m() const { return d_m_; }
    double spacing_n() const { return d_n_; }
    const MountPose &pose() const { return pose_; }

    static constexpr std::size_t flat_index(int row, int n, int cols)
    {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(n);
    }
    std::size_t flat_index(int row, int n) const { return flat_index(row, n, cols_); }
    int m_of_row(int row) const { return row - rows_ / 2; }

    double psi(int row) const { return psi_[static_cast<std::size_t>(row)]; }
    std::span<const double> psis() const { return psi_; }
    // Angular half-sector psi_M = M asin(d_m / 2R).
    double half_sector() const;

    // Displacement of element (row, n) from the reference element, door frame.
    Vec3 local_displacement(int row, int n) const;
    Vec3 local_displacement(std::size_t ell) const;

    // Elements are evaluated on demand from per-row tables; nothing of size
    // M*N is stored.
    Element element(int row, int n) const;
    Element element(std::size_t ell) const;

    // Door length along the cylinder axis (N d_n).
    double length() const { return cols_ * d_n_; }

    Vec3 to_door_frame(const Vec3 &global_dir) const { return rotate_z(global_dir, -pose_.yaw); }
    Vec3 from_door_frame(const Vec3 &door_dir) const { return rotate_z(door_dir, pose_.yaw); }

  private:
    int rows_ = 0;
    int cols_ = 0;
    double radius_ = 0.0;
    double d_m_ = 0.0;
    double d_n_ = 0.0;
    MountPose pose_;
    double cos_yaw_ = 1.0;
    double sin_yaw_ = 0.0;
    std::vector<double> psi_;
    std::vector<double> local_x_; // -2R sin^2(psi/2)
    std::vector<double> local_z_; // R sin(psi)
    std::vector<Vec3> normal_;    // global
};

// A = L * 2R psi_M with psi_M = M asin(d_m / 2R), L = N d_n.
double surface_area(int M, double radius, double d_m, double length);
double surface_area(const CirsGeometry &geometry);

// Rotate a global direction into the local frame of element `ell`, where the
// element normal is broadside (theta = 0, phi = pi/2).
Vec3 to_element_frame(const CirsGeometry &geometry, std::size_t ell, const Vec3 &global_dir);
AnglePair global_to_local_angles(const CirsGeometry &geometry, std::size_t ell, const AnglePair &global);
AnglePair local_to_global_angles(const CirsGeometry &geometry, std::size_t ell, const AnglePair &local);

struct RoadConfig
{
    int lanes = 5;
    double lane_width = 5.0;   // m
    double road_length = 500.0; // m

    // Lanes are centred on x = 0.
    double lane_center_x(int lane) const { return (lane - 0.5 * (lanes - 1)) * lane_width; }
    double width() const { return lanes * lane_width; }
};

/// Rectangle centred halfway between TxV and RxV where a specular-only
/// (pre-configured) relay can serve the pair. `axis` is the plan-view unit
/// vector along the TxV-RxV line; `length` is measured along it.
struct SpecularArea
{
    Vec3 center;
    double width = 0.0;
    double length = 0.0;
    Vec3 axis{0.0, 1.0, 0.0};

    bool contains(const Vec3 &p) const;
};

SpecularArea specular_area(const Vec3 &p_t, const Vec3 &p_r, const RoadConfig &road, double door_length);

} // namespace cirsim

#endif
