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

#ifndef CIRSIM_CHANNEL_HPP
#define CIRSIM_CHANNEL_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cirsim/geometry.hpp"
#include "cirsim/phase.hpp"
#include "cirsim/random.hpp"

namespace cirsim
{

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// a_k = exp(-j pi k cos(theta)) / sqrt(K), k = 0..K-1. The ULA lies along the
// global x axis, theta is the plan-view azimuth measured from +x.
ComplexVector array_response(int K, double theta);
// Same phases, unit per-antenna amplitude (codebook form).
ComplexVector steering_vector(int K, double theta);

inline constexpr double kDefaultPatternExponent = 0.285;

// rho = sqrt(2(2q+1)) cos^q(pi/2 - asin(cos(theta) sin(phi))), 0 behind the element.
double element_pattern(const AnglePair &local, double q);
// Same, taking c = cos(theta) sin(phi) = (direction . normal) directly.
double element_pattern_cos(double c, double q);

struct PathLossParams
{
    double sigma_sh_db = 3.0;
    double mu_first_db = 15.0;  // mean attenuation of a single blocker
    double mu_step_db = 6.0;    // extra mean attenuation per additional blocker
    double sigma_b_db = 4.0;
};

struct PathLossSample
{
    double loss_db = 0.0;
    int blockers = 0;
    double shadowing_db = 0.0;
    double blockage_db = 0.0;
};

double los_pathloss_db(double r, double f_ghz);
double blockage_mean_db(int blockers, const PathLossParams &params);
double sample_blockage_db(int blockers, const PathLossParams &params, Rng &rng);
PathLossSample sample_direct_pathloss(double r, double f_ghz, int blockers, const PathLossParams &params, Rng &rng);

struct PathLossMoments
{
    double mean_db = 0.0;
    double sigma_db = 0.0;
};
// Mean and spread of the sampled loss for a fixed blocker count.
PathLossMoments pathloss_moments(double r, double f_ghz, int blockers, const PathLossParams &params);

/// Roof-mounted ULA: K antennas spaced `spacing` along global x, centred on
/// `center`; `boresight` is the unit direction of maximum pattern gain.
struct Endpoint
{
    Vec3 center;
    Vec3 boresight{0.0, 1.0, 0.0};

    Vec3 antenna(int k, int K, double spacing) const
    {
        return center + Vec3{(k - 0.5 * (K - 1)) * spacing, 0.0, 0.0};
    }
};

struct LinkParams
{
    double lambda = 0.0;
    int K = 8;
    double q = kDefaultPatternExponent;
    double antenna_spacing = 0.0; // defaults to lambda / 2 when zero

    double spacing() const { return antenna_spacing > 0.0 ? antenna_spacing : 0.5 * lambda; }
};

// H_d = alpha rho_r rho_t a_r a_t^H with |alpha| = 10^(-loss/20), arg(alpha) = xi.
ComplexMatrix direct_channel(const Endpoint &tx, const Endpoint &rx, const LinkParams &params, double loss_db,
                             double xi);
ComplexMatrix direct_channel(const Endpoint &tx, const Endpoint &rx, const LinkParams &params,
                             const PathLossSample &pathloss, Rng &rng);

struct CascadedChannels
{
    ComplexMatrix H_tc; // MN x K
    ComplexMatrix H_cr; // K x MN
};

// Per-segment amplitude (d_m d_n lambda^2 / 64 pi^3)^(1/4) / r.
double segment_amplitude(double d_m, double d_n, double lambda, double r);

// Exact spherical distances per (element, antenna); xi_t and xi_r are the
// random path phases of the two segments.
CascadedChannels cascaded_channels(const CirsGeometry &geometry, const Endpoint &tx, const Endpoint &rx,
                                   const LinkParams &params, double xi_t, double xi_r);
CascadedChannels cascaded_channels(const CirsGeometry &geometry, const Endpoint &tx, const Endpoint &rx,
                                   const LinkParams &params, Rng &rng);

// Scalar value of entry (u, k) of H_cr Phi H_tc, evaluated term by term.
cplx cascaded_entry_sum(const CirsGeometry &geometry, const PhaseProfile &profile, const Endpoint &tx,
                        const Endpoint &rx, const LinkParams &params, double xi_t, double xi_r, int u, int k);

// w^H H_cr Phi H_tc f without forming the matrices.
cplx cascaded_response(const CirsGeometry &geometry, const PhaseProfile &profile, const Endpoint &tx,
                       const Endpoint &rx, const LinkParams &params, double xi_t, double xi_r,
                       const ComplexVector &f, const ComplexVector &w);

ComplexVector reflection_coefficients(const PhaseProfile &profile);
Eigen::DiagonalMatrix<cplx, Eigen::Dynamic> reflection_matrix(const PhaseProfile &profile);

struct RelayChannel
{
    ComplexMatrix H_cr;
    ComplexVector phi;
    ComplexMatrix H_tc;
};

ComplexMatrix total_channel(const ComplexMatrix &H_d, const std::vector<RelayChannel> &relays);

// ||H_cr Phi H_tc||_F^2 / (||H_cr||_F^2 ||Phi||_F^2 ||H_tc||_F^2), linear.
double normalized_gain(const ComplexMatrix &H_cr, const ComplexVector &phi, const ComplexMatrix &H_tc);

// Far-field normalized gain for plane-wave incidence from door-frame unit
// direction u_t and reflection toward u_r, linear.
double normalized_gain_far_field(const CirsGeometry &geometry, const PhaseProfile &profile, const Vec3 &u_t,
                                 const Vec3 &u_r, double lambda, double q);

// Elevation plane (theta_i = theta_o = 0), dB.
double channel_gain_elevation(const CirsGeometry &geometry, const PhaseProfile &profile, double phi_i,
                              double phi_o, double lambda, double q);
// Horizontal plane, specular theta_o = -theta_i, dB.
double channel_gain_azimuth(const CirsGeometry &geometry, const PhaseProfile &profile, double theta_i,
                            double lambda, double q);

double to_db(double linear);

} // namespace cirsim

#endif
