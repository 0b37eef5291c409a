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

#ifndef CIRSIM_PHASE_HPP
#define CIRSIM_PHASE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cirsim/geometry.hpp"

namespace cirsim
{

// Sign applied to every synthesized phase so that, with the reflection
// coefficient beta * exp(+j Phi), the cascaded element terms add coherently.
// Pinned by the coherence acceptance check.
inline constexpr double kPhaseSign = +1.0;

struct Wavevector
{
    double kx = 0.0;
    double ky = 0.0;
    double kz = 0.0;

    Vec3 vec() const { return {kx, ky, kz}; }
    double norm() const { return vec().norm(); }
};

// k = -(2 pi / lambda) u(theta_i, phi_i): the wave travels *from* the direction.
Wavevector incident_wavevector(const AnglePair &incidence, double lambda);
// k_bar = +(2 pi / lambda) u(theta_o, phi_o).
Wavevector reflected_wavevector(const AnglePair &reflection, double lambda);

// Wrap into [0, 2 pi).
double wrap_phase(double phase);

/// Per-element reflection coefficient beta_l exp(j Phi_l), flattened like
/// CirsGeometry. Phases are kept wrapped; amplitudes default to 1.
class PhaseProfile
{
  public:
    PhaseProfile() = default;
    static PhaseProfile zeros(int rows, int cols);
    static PhaseProfile from_raw(int rows, int cols, std::span<const double> raw);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return phase_.size(); }
    double phase(std::size_t ell) const { return phase_[ell]; }
    double amplitude(std::size_t ell) const { return amplitude_[ell]; }
    std::span<const double> phases() const { return phase_; }
    std::span<const double> amplitudes() const { return amplitude_; }

    // Values must lie in [0, 1].
    void set_amplitudes(std::span<const double> beta);

    // True when every row holds a single phase/amplitude (no gradient along n).
    bool row_constant() const { return row_constant_; }

  private:
    void refresh();

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> amplitude_;
    std::vector<double> phase_;
    bool row_constant_ = true;
};

// Raw (unwrapped) syntheses. Angles are expressed in the door frame.
std::vector<double> optimal_phase_raw(const CirsGeometry &geometry, const AnglePair &incidence,
                                      const AnglePair &reflection, double lambda, double sign = kPhaseSign);
std::vector<double> planar_phase_raw(int M, int N, double d_m, double d_n, const AnglePair &incidence,
                                     const AnglePair &reflection, double lambda, double sign = kPhaseSign);
std::vector<double> elevation_phase_raw(const CirsGeometry &geometry, double phi_i, double phi_o, double lambda);
// Closed form (8 pi R / lambda) sin(psi/2) cos((phi_o - phi_i)/2) cos((phi_o + phi_i + psi)/2)
// as printed; differs from elevation_phase_raw by an overall sign.
std::vector<double> printed_elevation_phase_raw(const CirsGeometry &geometry, double phi_i, double phi_o,
                                                double lambda);
std::vector<double> perpendicular_phase_raw(const CirsGeometry &geometry, double lambda);
std::vector<double> preconfigured_phase_raw(const CirsGeometry &geometry, double theta_bar, double lambda);
std::vector<double> azimuth_phase_raw(const CirsGeometry &geometry, double theta_i, double theta_o, double lambda);

PhaseProfile optimal_phase(const CirsGeometry &geometry, const AnglePair &incidence, const AnglePair &reflection,
                           double lambda);
PhaseProfile planar_phase(int M, int N, double d_m, double d_n, const AnglePair &incidence,
                          const AnglePair &reflection, double lambda);
PhaseProfile elevation_phase(const CirsGeometry &geometry, double phi_i, double phi_o, double lambda);
PhaseProfile perpendicular_phase(const CirsGeometry &geometry, double lambda);
PhaseProfile preconfigured_phase(const CirsGeometry &geometry, double theta_bar, double lambda);
PhaseProfile azimuth_phase(const CirsGeometry &geometry, double theta_i, double theta_o, double lambda);

// Elevation of the wave reflected by the perpendicular (curvature-only)
// profile at angular position psi; nullopt when the reflected wave is
// evanescent.
std::optional<double> reflected_elevation(double phi_i, double psi);
bool is_evanescent(double phi_i, double psi);

// Surfaces are y = f(x, z) with unit normal [-f_x, 1, -f_z] / sqrt(1 + |grad f|^2).
Vec3 surface_normal(double df_dx, double df_dz);

// Tangential phase gradient reconstructed from the two surface derivatives
// dPhi/dx and dPhi/dz taken along y = f(x, z).
Vec3 tangential_phase_gradient(double df_dx, double df_dz, double dphi_dx, double dphi_dz);

// Norm of the tangential part of (k_bar - k - grad Phi); zero when the
// generalized reflection law holds at that point.
double snell_residual(double df_dx, double df_dz, const Vec3 &grad_phi, const Vec3 &k, const Vec3 &k_bar);

} // namespace cirsim

#endif
