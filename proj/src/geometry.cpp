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

#include "cirsim/geometry.hpp"

#include <cmath>
#include <string>

namespace cirsim
{

CirsGeometry CirsGeometry::build(int M, int N, double radius, double d_m, double d_n, MountPose pose)
{
    if (M < 2 || M % 2 != 0)
        fail("build_cirs_geometry: M must be even and >= 2 (got " + std::to_string(M) + ")");
    if (N < 1)
        fail("build_cirs_geometry: N must be >= 1 (got " + std::to_string(N) + ")");
    if (!(radius > 0.0))
        fail("build_cirs_geometry: radius must be positive");
    if (!(d_n > 0.0))
        fail("build_cirs_geometry: d_n must be positive");
    if (!(d_m > 0.0) || !(d_m < 2.0 * radius))
        fail("build_cirs_geometry: need 0 < d_m < 2R (asin argument out of range)");
    if (!pose.position.finite() || !std::isfinite(pose.yaw))
        fail("build_cirs_geometry: pose must be finite");

    CirsGeometry g;
    g.rows_ = M;
    g.cols_ = N;
    g.radius_ = radius;
    g.d_m_ = d_m;
    g.d_n_ = d_n;
    g.pose_ = pose;

    const double step = 2.0 * std::asin(d_m / (2.0 * radius));
    g.cos_yaw_ = std::cos(pose.yaw);
    g.sin_yaw_ = std::sin(pose.yaw);
    const auto rows = static_cast<std::size_t>(M);
    g.psi_.resize(rows);
    g.local_x_.resize(rows);
    g.local_z_.resize(rows);
    g.normal_.resize(rows);
    for (std::size_t row = 0; row < rows; ++row)
    {
        const double psi = (static_cast<int>(row) - M / 2) * step;
        // R (cos psi - 1) loses every digit for huge R; -2R sin^2(psi/2) does not.
        const double s = std::sin(0.5 * psi);
        g.psi_[row] = psi;
        g.local_x_[row] = -2.0 * radius * s * s;
        g.local_z_[row] = radius * std::sin(psi);
        g.normal_[row] = rotate_z({std::cos(psi), 0.0, std::sin(psi)}, pose.yaw);
    }
    return g;
}

Element CirsGeometry::element(int row, int n) const
{
    const auto r = static_cast<std::size_t>(row);
    const double lx = local_x_[r], ly = d_n_ * n;
    return {{pose_.position.x + cos_yaw_ * lx - sin_yaw_ * ly, pose_.position.y + sin_yaw_ * lx + cos_yaw_ * ly,
             pose_.position.z + local_z_[r]},
            psi_[r],
            normal_[r]};
}

Element CirsGeometry::element(std::size_t ell) const
{
    const auto c = static_cast<std::size_t>(cols_);
    return element(static_cast<int>(ell / c), static_cast<int>(ell % c));
}

double CirsGeometry::half_sector() const { return rows_ * std::asin(d_m_ / (2.0 * radius_)); }

Vec3 CirsGeometry::local_displacement(int row, int n) const
{
    const auto r = static_cast<std::size_t>(row);
    return {local_x_[r], d_n_ * n, local_z_[r]};
}

Vec3 CirsGeometry::local_displacement(std::size_t ell) const
{
    const auto c = static_cast<std::size_t>(cols_);
    return local_displacement(static_cast<int>(ell / c), static_cast<int>(ell % c));
}

double surface_area(int M, double radius, double d_m, double length)
{
    if (M <= 0)
        return 0.0;
    return length * 2.0 * radius * M * std::asin(d_m / (2.0 * radius));
}

double surface_area(const CirsGeometry &geometry)
{
    return surface_area(geometry.rows(), geometry.radius(), geometry.spacing_m(), geometry.length());
}

Vec3 to_element_frame(const CirsGeometry &geometry, std::size_t ell, const Vec3 &global_dir)
{
    const Vec3 d = geometry.to_door_frame(global_dir);
    const double psi = geometry.element(ell).psi;
    const double c = std::cos(psi), s = std::sin(psi);
    return {c * d.x + s * d.z, d.y, -s * d.x + c * d.z};
}

AnglePair global_to_local_angles(const CirsGeometry &geometry, std::size_t ell, const AnglePair &global)
{
    return angles_of(to_element_frame(geometry, ell, unit_vector(global)));
}

AnglePair local_to_global_angles(const CirsGeometry &geometry, std::size_t ell, const AnglePair &local)
{
    const Vec3 e = unit_vector(local);
    const double psi = geometry.element(ell).psi;
    const double c = std::cos(psi), s = std::sin(psi);
    const Vec3 d{c * e.x - s * e.z, e.y, s * e.x + c * e.z};
    return angles_of(geometry.from_door_frame(d));
}

bool SpecularArea::contains(const Vec3 &p) const
{
    const double dx = p.x - center.x, dy = p.y - center.y;
    const double along = dx * axis.x + dy * axis.y;
    const double across = -dx * axis.y + dy * axis.x;
    constexpr double eps = 1e-9;
    return std::abs(along) <= 0.5 * length + eps && std::abs(across) <= 0.5 * width + eps;
}

SpecularArea specular_area(const Vec3 &p_t, const Vec3 &p_r, const RoadConfig &road, double door_length)
{
    const Vec3 d{p_r.x - p_t.x, p_r.y - p_t.y, 0.0};
    const double len = d.norm();
    if (!(len > 0.0))
        fail("specular_area: TxV and RxV coincide in plan view");
    SpecularArea area;
    area.center = (p_t + p_r) * 0.5;
    area.width = road.width();
    area.length = 2.0 * door_length;
    area.axis = d / len;
    // Orientation-free: swapping endpoints must give the same rectangle.
    if (area.axis.y < 0.0 || (area.axis.y == 0.0 && area.axis.x < 0.0))
        area.axis = -area.axis;
    return area;
}

} // namespace cirsim
