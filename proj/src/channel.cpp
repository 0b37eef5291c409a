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

#include "cirsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cirsim
{

namespace
{

Vec3 plan_direction(const Vec3 &from, const Vec3 &to) { return Vec3{to.x - from.x, to.y - from.y, 0.0}; }

double azimuth(const Vec3 &v) { return std::atan2(v.y, v.x); }

double pattern_toward(const Vec3 &from, const Vec3 &to, const Vec3 &axis, double q)
{
    const Vec3 d = to - from;
    return element_pattern_cos(d.dot(axis) / d.norm(), q);
}

void check_guard(double r, double lambda)
{
    if (!(r > 10.0 * lambda))
        fail("cascaded_channels: element-antenna distance " + std::to_string(r) +
             " m is inside the 10 lambda validity guard");
}

// Per-element quantities shared by the matrix and fused routes.
struct ElementLink
{
    double pattern = 0.0; // rho_t rho_c(t) or rho_r rho_c(r)
};

ElementLink element_link(const Element &e, const Endpoint &end, double q)
{
    const double rho_c = pattern_toward(e.position, end.center, e.normal, q);
    const double rho_a = pattern_toward(end.center, e.position, end.boresight, q);
    return {rho_c * rho_a};
}

} // namespace

ComplexVector steering_vector(int K, double theta)
{
    if (K < 1)
        fail("array_response: K must be >= 1");
    ComplexVector a(K);
    const double c = std::cos(theta);
    for (int k = 0; k < K; ++k)
        a[k] = std::polar(1.0, -kPi * k * c);
    return a;
}

ComplexVector array_response(int K, double theta) { return steering_vector(K, theta) / std::sqrt(double(K)); }

double element_pattern_cos(double c, double q)
{
    if (!(q > 0.0))
        fail("element_pattern: q must be positive");
    if (c <= 0.0)
        return 0.0;
    return std::sqrt(2.0 * (2.0 * q + 1.0)) * std::pow(std::min(c, 1.0), q);
}

double element_pattern(const AnglePair &local, double q)
{
    return element_pattern_cos(std::cos(local.theta) * std::sin(local.phi), q);
}

double los_pathloss_db(double r, double f_ghz)
{
    if (!(r > 0.0) || !(f_ghz > 0.0))
        fail("path loss: distance and frequency must be positive");
    return 32.4 + 20.0 * std::log10(r) + 20.0 * std::log10(f_ghz);
}

double blockage_mean_db(int blockers, const PathLossParams &params)
{
    if (blockers <= 0)
        return 0.0;
    return params.mu_first_db + params.mu_step_db * (blockers - 1);
}

double sample_blockage_db(int blockers, const PathLossParams &params, Rng &rng)
{
    if (blockers <= 0)
        return 0.0;
    return std::normal_distribution<double>(blockage_mean_db(blockers, params), params.sigma_b_db)(rng);
}

PathLossSample sample_direct_pathloss(double r, double f_ghz, int blockers, const PathLossParams &params, Rng &rng)
{
    PathLossSample s;
    s.blockers = std::max(blockers, 0);
    s.shadowing_db = std::normal_distribution<double>(0.0, params.sigma_sh_db)(rng);
    s.blockage_db = sample_blockage_db(s.blockers, params, rng);
    s.loss_db = los_pathloss_db(r, f_ghz) + s.blockage_db + s.shadowing_db;
    return s;
}

PathLossMoments pathloss_moments(double r, double f_ghz, int blockers, const PathLossParams &params)
{
    const double sb = blockers > 0 ? params.sigma_b_db : 0.0;
    return {los_pathloss_db(r, f_ghz) + blockage_mean_db(blockers, params),
            std::sqrt(params.sigma_sh_db * params.sigma_sh_db + sb * sb)};
}

ComplexMatrix direct_channel(const Endpoint &tx, const Endpoint &rx, const LinkParams &params, double loss_db,
                             double xi)
{
    const double theta = azimuth(plan_direction(tx.center, rx.center));
    const double rho_t = pattern_toward(tx.center, rx.center, tx.boresight, params.q);
    const double rho_r = pattern_toward(rx.center, tx.center, rx.boresight, params.q);
    const cplx alpha = std::polar(std::pow(10.0, -loss_db / 20.0), xi);
    return alpha * rho_r * rho_t * array_response(params.K, theta) * array_response(params.K, theta).adjoint();
}

ComplexMatrix direct_channel(const Endpoint &tx, const Endpoint &rx, const LinkParams &params,
                             const PathLossSample &pathloss, Rng &rng)
{
    return direct_channel(tx, rx, params, pathloss.loss_db, uniform_phase(rng));
}

double segment_amplitude(double d_m, double d_n, double lambda, double r)
{
    return std::pow(d_m * d_n * lambda * lambda / (64.0 * kPi * kPi * kPi), 0.25) / r;
}

CascadedChannels cascaded_channels(const CirsGeometry &geometry, const Endpoint &tx, const Endpoint &rx,
                                   const LinkParams &params, double xi_t, double xi_r)
{
    const auto L = static_cast<Eigen::Index>(geometry.size());
    const int K = params.K;
    const double kwave = kTwoPi / params.lambda;
    const double norm = 1.0 / std::sqrt(double(K));
    CascadedChannels out{ComplexMatrix(L, K), ComplexMatrix(K, L)};
    for (Eigen::Index ell = 0; ell < L; ++ell)
    {
        const Element &e = geometry.element(static_cast<std::size_t>(ell));
        const double pt = element_link(e, tx, params.q).pattern;
        const double pr = element_link(e, rx, params.q).pattern;
        for (int k = 0; k < K; ++k)
        {
            const double rt = (e.position - tx.antenna(k, K, params.spacing())).norm();
            const double rr = (e.position - rx.antenna(k, K, params.spacing())).norm();
            check_guard(rt, params.lambda);
            check_guard(rr, params.lambda);
            const double at = norm * segment_amplitude(geometry.spacing_m(), geometry.spacing_n(), params.lambda, rt);
            const double ar = norm * segment_amplitude(geometry.spacing_m(), geometry.spacing_n(), params.lambda, rr);
            out.H_tc(ell, k) = std::polar(at * pt, xi_t - kwave * rt);
            out.H_cr(k, ell) = std::polar(ar * pr, xi_r - kwave * rr);
        }
    }
    return out;
}

CascadedChannels cascaded_channels(const CirsGeometry &geometry, const Endpoint &tx, const Endpoint &rx,
                                   const LinkParams &params, Rng &rng)
{
    const double xi_t = uniform_phase(rng);
    const double xi_r = uniform_phase(rng);
    return cascaded_channels(geometry, tx, rx, params, xi_t, xi_r);
}

cplx cascaded_entry_sum(const CirsGeometry &geometry, const PhaseProfile &profile, const Endpoint &tx,
                        const Endpoint &rx, const LinkParams &params, double xi_t, double xi_r, int u, int k)
{
    if (profile.size() != geometry.size())
        fail("cascaded_entry_sum: profile does not match geometry");
    const int K = params.K;
    const double c0 = std::sqrt(geometry.spacing_m() * geometry.spacing_n() * params.lambda * params.lambda /
                                (64.0 * kPi * kPi * kPi));
    cplx sum = 0.0;
    for (std::size_t ell = 0; ell < geometry.size(); ++ell)
    {
        const Element &e = geometry.element(ell);
        const double rt = (e.position - tx.antenna(k, K, params.spacing())).norm();
        const double rr = (e.position - rx.antenna(u, K, params.spacing())).norm();
        const double gamma = element_link(e, tx, params.q).pattern * element_link(e, rx, params.q).pattern;
        const double amp = gamma * profile.amplitude(ell) * c0 / (K * rt * rr);
        sum += std::polar(amp, xi_t + xi_r + profile.phase(ell) - kTwoPi / params.lambda * (rt + rr));
    }
    return sum;
}

cplx cascaded_response(const CirsGeometry &geometry, const PhaseProfile &profile, const Endpoint &tx,
                       const Endpoint &rx, const LinkParams &params, double xi_t, double xi_r,
                       const ComplexVector &f, const ComplexVector &w)
{
    const int K = params.K;
    if (profile.size() != geometry.size())
        fail("cascaded_response: profile does not match geometry");
    if (f.size() != K || w.size() != K)
        fail("cascaded_response: beamformer length must equal K");
    const double kwave = kTwoPi / params.lambda;
    const double c0 = std::pow(geometry.spacing_m() * geometry.spacing_n() * params.lambda * params.lambda /
                                   (64.0 * kPi * kPi * kPi),
                               0.25) /
                      std::sqrt(double(K));
    std::vector<Vec3> ant_t(static_cast<std::size_t>(K)), ant_r(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
    {
        ant_t[static_cast<std::size_t>(k)] = tx.antenna(k, K, params.spacing());
        ant_r[static_cast<std::size_t>(k)] = rx.antenna(k, K, params.spacing());
    }
    const ComplexVector wc = w.conjugate();
    cplx total = 0.0;
    for (std::size_t ell = 0; ell < geometry.size(); ++ell)
    {
        const Element &e = geometry.element(ell);
        const double beta = profile.amplitude(ell);
        if (beta == 0.0)
            continue;
        const double gamma = element_link(e, tx, params.q).pattern * element_link(e, rx, params.q).pattern;
        if (gamma == 0.0)
            continue;
        cplx st = 0.0, sr = 0.0;
        for (int k = 0; k < K; ++k)
        {
            const double rt = (e.position - ant_t[static_cast<std::size_t>(k)]).norm();
            const double rr = (e.position - ant_r[static_cast<std::size_t>(k)]).norm();
            check_guard(rt, params.lambda);
            check_guard(rr, params.lambda);
            st += f[k] * std::polar(1.0 / rt, -kwave * rt);
            sr += wc[k] * std::polar(1.0 / rr, -kwave * rr);
        }
        total += std::polar(beta * gamma, profile.phase(ell)) * st * sr;
    }
    return total * std::polar(c0 * c0, xi_t + xi_r);
}

ComplexVector reflection_coefficients(const PhaseProfile &profile)
{
    ComplexVector phi(static_cast<Eigen::Index>(profile.size()));
    for (std::size_t ell = 0; ell < profile.size(); ++ell)
        phi[static_cast<Eigen::Index>(ell)] = std::polar(profile.amplitude(ell), profile.phase(ell));
    return phi;
}

Eigen::DiagonalMatrix<cplx, Eigen::Dynamic> reflection_matrix(const PhaseProfile &profile)
{
    return Eigen::DiagonalMatrix<cplx, Eigen::Dynamic>(reflection_coefficients(profile));
}

ComplexMatrix total_channel(const ComplexMatrix &H_d, const std::vector<RelayChannel> &relays)
{
    ComplexMatrix H = H_d;
    for (const auto &r : relays)
    {
        if (r.H_cr.rows() != H.rows() || r.H_tc.cols() != H.cols() || r.H_cr.cols() != r.phi.size() ||
            r.H_tc.rows() != r.phi.size())
            fail("total_channel: relay shapes are not conformable with H_d");
        H.noalias() += r.H_cr * r.phi.asDiagonal() * r.H_tc;
    }
    return H;
}

double normalized_gain(const ComplexMatrix &H_cr, const ComplexVector &phi, const ComplexMatrix &H_tc)
{
    const double denom = H_cr.squaredNorm() * phi.squaredNorm() * H_tc.squaredNorm();
    if (!(denom > 0.0))
        return 0.0;
    const ComplexMatrix P = H_cr * phi.asDiagonal() * H_tc;
    return P.squaredNorm() / denom;
}

double normalized_gain_far_field(const CirsGeometry &geometry, const PhaseProfile &profile, const Vec3 &u_t,
                                 const Vec3 &u_r, double lambda, double q)
{
    if (profile.size() != geometry.size())
        fail("normalized_gain: profile does not match geometry");
    const double kwave = kTwoPi / lambda;
    const int M = geometry.rows(), N = geometry.cols();
    auto row_terms = [&](int row, double &bt, double &br) {
        const double psi = geometry.psi(row);
        const Vec3 n{std::cos(psi), 0.0, std::sin(psi)};
        bt = element_pattern_cos(u_t.dot(n), q);
        br = element_pattern_cos(u_r.dot(n), q);
    };
    double sum_t = 0.0, sum_r = 0.0, sum_phi = 0.0;
    cplx acc = 0.0;
    if (profile.row_constant())
    {
        // Every factor splits into a row part and a column part.
        const Vec3 w = u_t + u_r;
        for (int row = 0; row < M; ++row)
        {
            double bt, br;
            row_terms(row, bt, br);
            const std::size_t ell = geometry.flat_index(row, 0);
            const Vec3 p = geometry.local_displacement(row, 0);
            const double beta = profile.amplitude(ell);
            sum_t += bt * bt;
            sum_r += br * br;
            sum_phi += beta * beta;
            acc += std::polar(bt * br * beta, profile.phase(ell) + kwave * (w.x * p.x + w.z * p.z));
        }
        cplx cols = 0.0;
        for (int n = 0; n < N; ++n)
            cols += std::polar(1.0, kwave * w.y * geometry.spacing_n() * n);
        acc *= cols;
        sum_t *= N;
        sum_r *= N;
        sum_phi *= N;
    }
    else
    {
        for (int row = 0; row < M; ++row)
        {
            double bt, br;
            row_terms(row, bt, br);
            for (int n = 0; n < N; ++n)
            {
                const std::size_t ell = geometry.flat_index(row, n);
                const Vec3 p = geometry.local_displacement(row, n);
                const double beta = profile.amplitude(ell);
                sum_t += bt * bt;
                sum_r += br * br;
                sum_phi += beta * beta;
                acc += std::polar(bt * br * beta, profile.phase(ell) + kwave * (u_t + u_r).dot(p));
            }
        }
    }
    const double denom = sum_t * sum_r * sum_phi;
    return denom > 0.0 ? std::norm(acc) / denom : 0.0;
}

double channel_gain_elevation(const CirsGeometry &geometry, const PhaseProfile &profile, double phi_i,
                              double phi_o, double lambda, double q)
{
    return to_db(normalized_gain_far_field(geometry, profile, unit_vector({0.0, phi_i}), unit_vector({0.0, phi_o}),
                                           lambda, q));
}

double channel_gain_azimuth(const CirsGeometry &geometry, const PhaseProfile &profile, double theta_i,
                            double lambda, double q)
{
    return to_db(normalized_gain_far_field(geometry, profile, unit_vector({theta_i, kPi / 2}),
                                           unit_vector({-theta_i, kPi / 2}), lambda, q));
}

double to_db(double linear) { return 10.0 * std::log10(std::max(linear, 1e-300)); }

} // namespace cirsim
