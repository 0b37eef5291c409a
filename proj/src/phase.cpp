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

#include "cirsim/phase.hpp"

#include <algorithm>
#include <cmath>

namespace cirsim
{

namespace
{

constexpr double kClampTolerance = 1e-12;

std::vector<double> row_constant_raw(const CirsGeometry &g, double (*f)(double psi, const void *), const void *ctx)
{
    std::vector<double> raw(g.size());
    for (int row = 0; row < g.rows(); ++row)
    {
        const double v = f(g.psi(row), ctx);
        std::fill_n(raw.begin() + static_cast<std::ptrdiff_t>(g.flat_index(row, 0)), g.cols(), v);
    }
    return raw;
}

// -(4 pi R / lambda)(cos psi - 1), written without cancellation.
double curvature_term(double radius, double psi, double lambda)
{
    const double s = std::sin(0.5 * psi);
    return 8.0 * kPi * radius * s * s / lambda;
}

} // namespace

Wavevector incident_wavevector(const AnglePair &incidence, double lambda)
{
    const Vec3 k = unit_vector(incidence) * (-kTwoPi / lambda);
    return {k.x, k.y, k.z};
}

Wavevector reflected_wavevector(const AnglePair &reflection, double lambda)
{
    const Vec3 k = unit_vector(reflection) * (kTwoPi / lambda);
    return {k.x, k.y, k.z};
}

double wrap_phase(double phase)
{
    double w = std::fmod(phase, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    if (w >= kTwoPi)
        w = 0.0;
    return w;
}

PhaseProfile PhaseProfile::zeros(int rows, int cols)
{
    PhaseProfile p;
    p.rows_ = rows;
    p.cols_ = cols;
    const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    p.phase_.assign(n, 0.0);
    p.amplitude_.assign(n, 1.0);
    return p;
}

PhaseProfile PhaseProfile::from_raw(int rows, int cols, std::span<const double> raw)
{
    PhaseProfile p = zeros(rows, cols);
    if (raw.size() != p.size())
        fail("PhaseProfile: raw phase count does not match rows * cols");
    std::transform(raw.begin(), raw.end(), p.phase_.begin(), wrap_phase);
    p.refresh();
    return p;
}

void PhaseProfile::set_amplitudes(std::span<const double> beta)
{
    if (beta.size() != amplitude_.size())
        fail("PhaseProfile: amplitude count mismatch");
    for (double b : beta)
        if (!(b >= 0.0 && b <= 1.0))
            fail("PhaseProfile: amplitudes must lie in [0, 1]");
    std::copy(beta.begin(), beta.end(), amplitude_.begin());
    refresh();
}

void PhaseProfile::refresh()
{
    row_constant_ = false;
    const auto c = static_cast<std::size_t>(cols_);
    for (std::size_t r = 0; r < static_cast<std::size_t>(rows_); ++r)
        for (std::size_t n = 1; n < c; ++n)
            if (phase_[r * c + n] != phase_[r * c] || amplitude_[r * c + n] != amplitude_[r * c])
                return;
    row_constant_ = true;
}

std::vector<double> optimal_phase_raw(const CirsGeometry &geometry, const AnglePair &incidence,
                                      const AnglePair &reflection, double lambda, double sign)
{
    const Vec3 w = unit_vector(incidence) + unit_vector(reflection);
    const double scale = -sign * kTwoPi / lambda;
    std::vector<double> raw(geometry.size());
    for (std::size_t ell = 0; ell < raw.size(); ++ell)
        raw[ell] = scale * geometry.local_displacement(ell).dot(w);
    return raw;
}

std::vector<double> planar_phase_raw(int M, int N, double d_m, double d_n, const AnglePair &incidence,
                                     const AnglePair &reflection, double lambda, double sign)
{
    const Vec3 w = unit_vector(incidence) + unit_vector(reflection);
    const double scale = -sign * kTwoPi / lambda;
    std::vector<double> raw(static_cast<std::size_t>(M) * static_cast<std::size_t>(N));
    for (int row = 0; row < M; ++row)
        for (int n = 0; n < N; ++n)
            raw[CirsGeometry::flat_index(row, n, N)] = scale * (d_n * n * w.y + d_m * (row - M / 2) * w.z);
    return raw;
}

std::vector<double> elevation_phase_raw(const CirsGeometry &geometry, double phi_i, double phi_o, double lambda)
{
    return optimal_phase_raw(geometry, {0.0, phi_i}, {0.0, phi_o}, lambda);
}

std::vector<double> printed_elevation_phase_raw(const CirsGeometry &geometry, double phi_i, double phi_o,
                                                double lambda)
{
    struct Ctx
    {
        double R, lambda, phi_i, phi_o;
    } ctx{geometry.radius(), lambda, phi_i, phi_o};
    return row_constant_raw(
        geometry,
        [](double psi, const void *p) {
            const auto &c = *static_cast<const Ctx *>(p);
            return 8.0 * kPi * c.R / c.lambda * std::sin(0.5 * psi) * std::cos(0.5 * (c.phi_o - c.phi_i)) *
                   std::cos(0.5 * (c.phi_o + c.phi_i + psi));
        },
        &ctx);
}

std::vector<double> perpendicular_phase_raw(const CirsGeometry &geometry, double lambda)
{
    return preconfigured_phase_raw(geometry, 0.0, lambda);
}

std::vector<double> preconfigured_phase_raw(const CirsGeometry &geometry, double theta_bar, double lambda)
{
    if (!(theta_bar >= 0.0 && theta_bar <= kPi / 2 + 1e-12))
        fail("preconfigured_phase: theta_bar must lie in [0, pi/2]");
    struct Ctx
    {
        double R, lambda, c;
    } ctx{geometry.radius(), lambda, std::cos(theta_bar)};
    return row_constant_raw(
        geometry,
        [](double psi, const void *p) {
            const auto &c = *static_cast<const Ctx *>(p);
            return kPhaseSign * curvature_term(c.R, psi, c.lambda) * c.c;
        },
        &ctx);
}

std::vector<double> azimuth_phase_raw(const CirsGeometry &geometry, double theta_i, double theta_o, double lambda)
{
    const double half_diff = std::cos(0.5 * (theta_o - theta_i));
    const double c_sum = std::cos(0.5 * (theta_o + theta_i));
    const double s_sum = std::sin(0.5 * (theta_o + theta_i));
    const double scale = -kPhaseSign * 4.0 * kPi / lambda * half_diff;
    std::vector<double> raw(geometry.size());
    for (int row = 0; row < geometry.rows(); ++row)
    {
        const double x = geometry.local_displacement(row, 0).x;
        for (int n = 0; n < geometry.cols(); ++n)
            raw[geometry.flat_index(row, n)] = scale * (x * c_sum + geometry.spacing_n() * n * s_sum);
    }
    return raw;
}

PhaseProfile optimal_phase(const CirsGeometry &geometry, const AnglePair &incidence, const AnglePair &reflection,
                           double lambda)
{
    return PhaseProfile::from_raw(geometry.rows(), geometry.cols(),
                                  optimal_phase_raw(geometry, incidence, reflection, lambda));
}

PhaseProfile planar_phase(int M, int N, double d_m, double d_n, const AnglePair &incidence,
                          const AnglePair &reflection, double lambda)
{
    return PhaseProfile::from_raw(M, N, planar_phase_raw(M, N, d_m, d_n, incidence, reflection, lambda));
}

PhaseProfile elevation_phase(const CirsGeometry &geometry, double phi_i, double phi_o, double lambda)
{
    return PhaseProfile::from_raw(geometry.rows(), geometry.cols(),
                                  elevation_phase_raw(geometry, phi_i, phi_o, lambda));
}

PhaseProfile perpendicular_phase(const CirsGeometry &geometry, double lambda)
{
    return PhaseProfile::from_raw(geometry.rows(), geometry.cols(), perpendicular_phase_raw(geometry, lambda));
}

PhaseProfile preconfigured_phase(const CirsGeometry &geometry, double theta_bar, double lambda)
{
    return PhaseProfile::from_raw(geometry.rows(), geometry.cols(),
                                  preconfigured_phase_raw(geometry, theta_bar, lambda));
}

PhaseProfile azimuth_phase(const CirsGeometry &geometry, double theta_i, double theta_o, double lambda)
{
    return PhaseProfile::from_raw(geometry.rows(), geometry.cols(),
                                  azimuth_phase_raw(geometry, theta_i, theta_o, lambda));
}

namespace
{
double reflected_elevation_argument(double phi_i, double psi)
{
    return -2.0 * std::sin(0.5 * psi) - std::cos(phi_i + 0.5 * psi);
}
} // namespace

bool is_evanescent(double phi_i, double psi)
{
    return std::abs(reflected_elevation_argument(phi_i, psi)) > 1.0 + kClampTolerance;
}

std::optional<double> reflected_elevation(double phi_i, double psi)
{
    if (is_evanescent(phi_i, psi))
        return std::nullopt;
    const double arg = std::clamp(reflected_elevation_argument(phi_i, psi), -1.0, 1.0);
    return std::acos(arg) - 0.5 * psi;
}

Vec3 surface_normal(double df_dx, double df_dz)
{
    return Vec3{-df_dx, 1.0, -df_dz}.normalized();
}

Vec3 tangential_phase_gradient(double df_dx, double df_dz, double dphi_dx, double dphi_dz)
{
    // Solve g . t_x = dphi_dx, g . t_z = dphi_dz, g . n = 0 (Cramer's rule).
    const Vec3 t_x{1.0, df_dx, 0.0};
    const Vec3 t_z{0.0, df_dz, 1.0};
    const Vec3 n{-df_dx, 1.0, -df_dz};
    const double det = t_x.dot(t_z.cross(n));
    return (t_z.cross(n) * dphi_dx + n.cross(t_x) * dphi_dz) / det;
}

double snell_residual(double df_dx, double df_dz, const Vec3 &grad_phi, const Vec3 &k, const Vec3 &k_bar)
{
    const Vec3 u = surface_normal(df_dx, df_dz);
    const Vec3 v = k_bar - k - grad_phi;
    return (v - u * v.dot(u)).norm();
}

} // namespace cirsim
