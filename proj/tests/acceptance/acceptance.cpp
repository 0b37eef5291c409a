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

// End-to-end acceptance checks. One PASS/FAIL line per criterion; the exit
// status is non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cirsim/channel.hpp"
#include "cirsim/commands.hpp"
#include "cirsim/experiments.hpp"
#include "cirsim/phase.hpp"
#include "cirsim/scenario.hpp"
#include "cirsim/stats.hpp"

using namespace cirsim;
namespace fs = std::filesystem;

namespace
{

const double lambda28 = 299792458.0 / 28e9;

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!detail.empty())
            detail += "; ";
        detail += what + (ok ? "" : " [x]");
        pass = pass && ok;
    }
};

std::string fmt(const char *f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double sup_diff(const std::vector<double> &a, const std::vector<double> &b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

// 1 -----------------------------------------------------------------------
Outcome phase_identities()
{
    Outcome o;
    const double d = lambda28 / 4;
    const auto g = CirsGeometry::build(64, 16, 2.0, d, d);
    double worst_az = 0.0, worst_pre = 0.0, worst_perp = 0.0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j)
        {
            const double ti = -kPi / 2 + kPi * i / 49, to = -kPi / 2 + kPi * j / 49;
            worst_az = std::max(worst_az, sup_diff(optimal_phase_raw(g, {ti, kPi / 2}, {to, kPi / 2}, lambda28),
                                                   azimuth_phase_raw(g, ti, to, lambda28)));
        }
    for (int i = 0; i < 50; ++i)
    {
        const double R = 0.5 + 0.5 * i;
        const auto gr = CirsGeometry::build(64, 4, R, d, d);
        const auto perp = perpendicular_phase_raw(gr, lambda28);
        worst_perp = std::max(worst_perp, sup_diff(optimal_phase_raw(gr, {0, kPi / 2}, {0, kPi / 2}, lambda28), perp));
        for (int j = 0; j < 50; ++j)
        {
            const double t = kPi / 2 * j / 49;
            worst_pre = std::max(worst_pre, sup_diff(optimal_phase_raw(gr, {t, kPi / 2}, {-t, kPi / 2}, lambda28),
                                                     preconfigured_phase_raw(gr, t, lambda28)));
        }
    }
    o.require(worst_az < 1e-9, "azimuth " + fmt("%.2e", worst_az));
    o.require(worst_pre < 1e-9, "preconfigured " + fmt("%.2e", worst_pre));
    o.require(worst_perp < 1e-9, "perpendicular " + fmt("%.2e", worst_perp));

    const auto flat = CirsGeometry::build(400, 400, 1e6, d, d);
    double worst_planar = 0.0;
    const AnglePair pairs[][2] = {{{0.0, kPi / 2}, {0.0, kPi / 2}},
                                  {{0.4, 1.2}, {-0.9, 2.0}},
                                  {{-1.2, 0.3}, {1.0, 2.8}}};
    for (const auto &p : pairs)
        worst_planar = std::max(worst_planar, sup_diff(optimal_phase_raw(flat, p[0], p[1], lambda28),
                                                       planar_phase_raw(400, 400, d, d, p[0], p[1], lambda28)));
    o.require(worst_planar < 1e-3, "planar limit " + fmt("%.2e", worst_planar));
    return o;
}

// 2 -----------------------------------------------------------------------
Outcome snell()
{
    // Cylindrical surface y = sqrt(R^2 - z^2) - R with the integrated phase
    // field Phi = (k_bar - k) . r evaluated on it.
    Outcome o;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const double R = 0.5 + 9.5 * u(rng);
        const double z = (2 * u(rng) - 1) * 0.95 * R;
        const double fx = 0.0, fz = -z / std::sqrt(R * R - z * z);
        const Vec3 k = incident_wavevector({kTwoPi * u(rng), kPi * u(rng)}, lambda28).vec();
        const Vec3 kb = reflected_wavevector({kTwoPi * u(rng), kPi * u(rng)}, lambda28).vec();
        const Vec3 dk = kb - k;
        const Vec3 grad = tangential_phase_gradient(fx, fz, dk.x + dk.y * fx, dk.z + dk.y * fz);
        worst = std::max(worst, snell_residual(fx, fz, grad, k, kb));
    }
    o.require(worst < 1e-9, "max residual " + fmt("%.2e", worst) + " rad/m");
    return o;
}

// 3 -----------------------------------------------------------------------
double coherence_ratio(double sign)
{
    const double d = lambda28 / 4;
    const int M = 100, N = 100;
    const MountPose pose{{10.0, 0.0, 0.75}, side_yaw(Side::left)};
    const auto g = CirsGeometry::build(M, N, 2.0, d, d, pose);
    const Vec3 centre = g.element(M / 2, N / 2).position;
    const Endpoint tx{centre + Vec3{-400.0, -700.0, 30.0}, {0, 1, 0}};
    const Endpoint rx{centre + Vec3{-600.0, 500.0, -20.0}, {0, -1, 0}};
    LinkParams lp;
    lp.lambda = lambda28;
    lp.K = 1;
    const CascadedChannels c = cascaded_channels(g, tx, rx, lp, 0.0, 0.0);
    // The phase reference is the flattened element 0 = (row 0, n 0); use
    // directions from the reference element (m = 0, n = 0).
    const Vec3 ref = g.element(M / 2, 0).position;
    const AnglePair inc = angles_of(g.to_door_frame(tx.center - ref));
    const AnglePair refl = angles_of(g.to_door_frame(rx.center - ref));
    const PhaseProfile p = PhaseProfile::from_raw(M, N, optimal_phase_raw(g, inc, refl, lambda28, sign));
    const ComplexVector phi = reflection_coefficients(p);
    cplx sum = 0.0;
    double mags = 0.0;
    for (Eigen::Index l = 0; l < phi.size(); ++l)
    {
        const cplx t = c.H_cr(0, l) * phi[l] * c.H_tc(l, 0);
        sum += t;
        mags += std::abs(t);
    }
    return std::norm(sum) / (mags * mags);
}

Outcome coherence()
{
    Outcome o;
    const double plus = coherence_ratio(+1.0), minus = coherence_ratio(-1.0);
    const double chosen = coherence_ratio(kPhaseSign);
    o.require(chosen >= 0.99, "s = " + fmt("%+.0f", kPhaseSign) + " ratio " + fmt("%.6f", chosen));
    o.require((plus >= 0.99) != (minus >= 0.99),
              "exactly one sign passes (+1: " + fmt("%.4f", plus) + ", -1: " + fmt("%.2e", minus) + ")");
    return o;
}

// 4 -----------------------------------------------------------------------
Outcome brute_force()
{
    Outcome o;
    Rng rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw)
    {
        const int M = 2 * (1 + static_cast<int>(4 * u(rng))), N = 1 + static_cast<int>(8 * u(rng));
        const int K = 1 + static_cast<int>(2 * u(rng));
        const double R = 0.5 + 10 * u(rng);
        const auto g = CirsGeometry::build(M, N, R, lambda28 / 4, lambda28 / 4, {{0, 0, 0.75}, kPi * (draw % 2)});
        const double sx = draw % 2 ? -1.0 : 1.0;
        const Endpoint tx{{sx * (5 + 20 * u(rng)), -30 * u(rng) - 5, 1.5}, {0, 1, 0}};
        const Endpoint rx{{sx * (5 + 20 * u(rng)), 30 * u(rng) + 5, 1.5}, {0, -1, 0}};
        LinkParams lp;
        lp.lambda = lambda28;
        lp.K = K;
        std::vector<double> raw(g.size()), beta(g.size());
        for (std::size_t i = 0; i < raw.size(); ++i)
        {
            raw[i] = 50 * u(rng);
            beta[i] = u(rng);
        }
        PhaseProfile p = PhaseProfile::from_raw(M, N, raw);
        p.set_amplitudes(beta);
        const double xi_t = uniform_phase(rng), xi_r = uniform_phase(rng);
        const CascadedChannels c = cascaded_channels(g, tx, rx, lp, xi_t, xi_r);
        const ComplexMatrix H = c.H_cr * reflection_matrix(p) * c.H_tc;
        for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b)
            {
                const cplx ref = cascaded_entry_sum(g, p, tx, rx, lp, xi_t, xi_r, a, b);
                worst = std::max(worst, std::abs(H(a, b) - ref) / std::abs(ref));
            }
    }
    o.require(worst < 1e-10, "max relative error " + fmt("%.2e", worst));
    return o;
}

// 5-7 ---------------------------------------------------------------------
Outcome gain_elevation(const SimConfig &cfg)
{
    Outcome o;
    const auto curves = run_gain_elevation(cfg);
    for (const auto &c : curves)
    {
        if (c.radius_m == 2.0)
            o.require(in_range(c.width_deg, 15, 25), "dphi(R=2) " + fmt("%.1f", c.width_deg) + " in 20+-5");
        if (c.radius_m == 8.0)
            o.require(in_range(c.width_deg, 30, 50), "dphi(R=8) " + fmt("%.1f", c.width_deg) + " in 40+-10");
        if (c.radius_m == 2.0)
        {
            const double adv = GainCurve::at(c.angle_deg, c.cirs_db, 90.0) - GainCurve::at(c.angle_deg, c.bare_db, 90.0);
            o.require(adv >= 15.0, "C-IRS - bare at 90 deg " + fmt("%.1f", adv) + " dB >= 15");
        }
    }
    return o;
}

Outcome gain_azimuth(const SimConfig &cfg)
{
    Outcome o;
    for (const auto &c : run_gain_azimuth(cfg))
    {
        if (c.radius_m == 2.0)
            o.require(in_range(c.width_deg, 10, 20), "dtheta(R=2) " + fmt("%.1f", c.width_deg) + " in 15+-5");
        if (c.radius_m == 8.0)
            o.require(c.width_deg >= 60, "dtheta(R=8) " + fmt("%.1f", c.width_deg) + " >= 60");
    }
    return o;
}

Outcome gain_frequency(const SimConfig &cfg)
{
    Outcome o;
    const auto c = run_gain_frequency(cfg);
    bool peak_up = true, width_down = true;
    std::string peaks, widths;
    for (std::size_t i = 0; i < c.size(); ++i)
    {
        peaks += (i ? " " : "") + fmt("%.2f", c[i].peak_db);
        widths += (i ? " " : "") + fmt("%.1f", c[i].width_deg);
        if (i > 0)
        {
            peak_up = peak_up && c[i].peak_db > c[i - 1].peak_db;
            width_down = width_down && c[i].width_deg < c[i - 1].width_deg;
        }
    }
    o.require(peak_up, "peak dB increasing (" + peaks + ")");
    o.require(width_down, "dphi decreasing (" + widths + ")");
    return o;
}

// 8 -----------------------------------------------------------------------
Outcome blockage(const SimConfig &base)
{
    Outcome o;
    SimConfig cfg = base;
    cfg.trials = 10000;
    cfg.rho_list = {10, 20, 30, 40};
    cfg.rd_list = {100};
    const auto pts = run_blockage_sweep(cfg);
    auto prob = [&](double rho, BlockageMode m) {
        for (const auto &p : pts)
            if (p.rho == rho && p.mode == m)
                return p.probability.p;
        return -1.0;
    };
    bool mono = true;
    std::string direct;
    for (double rho : cfg.rho_list)
    {
        direct += (direct.empty() ? "" : " ") + fmt("%.3f", prob(rho, BlockageMode::direct));
        if (rho > cfg.rho_list.front())
            mono = mono && prob(rho, BlockageMode::direct) > prob(rho - 10, BlockageMode::direct);
    }
    o.require(mono, "direct monotone (" + direct + ")");
    const double pd = prob(30, BlockageMode::direct);
    const double red_irs = 100 * (pd - prob(30, BlockageMode::with_irs)) / pd;
    const double red_ris = 100 * (pd - prob(30, BlockageMode::with_ris)) / pd;
    o.require(in_range(red_irs, 10, 30), "C-IRS reduction " + fmt("%.1f", red_irs) + "% in 20+-10");
    o.require(in_range(red_ris, 60, 80), "C-RIS reduction " + fmt("%.1f", red_ris) + "% in 70+-10");
    return o;
}

// 9 -----------------------------------------------------------------------
Outcome snr(const SimConfig &base)
{
    Outcome o;
    SimConfig cfg = base;
    cfg.reduced_elements = 100;
    cfg.snr_trials = 200;
    cfg.rd_list = {50};
    cfg.snr_rho_list = {10, 40};
    cfg.radii_m = {2, 8};
    const auto series = run_snr_ecdf(cfg);
    auto find = [&](BlockageMode m, double R, double rho) -> const SnrSeries & {
        for (const auto &s : series)
            if (s.mode == m && s.radius_m == R && s.rho == rho)
                return s;
        throw Error(ErrorCode::internal, "missing series");
    };
    const double R = 2.0;
    for (double rho : cfg.snr_rho_list)
    {
        const double d = find(BlockageMode::direct, R, rho).ecdf.median();
        const double gi = find(BlockageMode::with_irs, R, rho).ecdf.median() - d;
        const double gr = find(BlockageMode::with_ris, R, rho).ecdf.median() - d;
        const std::string tag = "(rho=" + fmt("%.0f", rho) + ") ";
        if (rho == 10)
        {
            o.require(in_range(gi, 0, 6), "C-IRS gain " + tag + fmt("%.1f", gi) + " dB in 3+-3");
            o.require(in_range(gr, 15, 25), "C-RIS gain " + tag + fmt("%.1f", gr) + " dB in 20+-5");
        }
        else
        {
            o.require(in_range(gi, 5, 15), "C-IRS gain " + tag + fmt("%.1f", gi) + " dB in 10+-5");
            o.require(gr >= 30, "C-RIS gain " + tag + fmt("%.1f", gr) + " dB >= 30");
        }
    }
    double worst_radius = 0.0;
    bool dominance = true;
    for (double rho : cfg.snr_rho_list)
        for (auto m : {BlockageMode::direct, BlockageMode::with_irs, BlockageMode::with_ris})
            for (int k = 1; k <= 9; ++k)
            {
                const double p = k / 10.0;
                worst_radius = std::max(worst_radius, std::abs(find(m, 2, rho).ecdf.quantile(p) -
                                                               find(m, 8, rho).ecdf.quantile(p)));
            }
    for (double Rr : cfg.radii_m)
        for (double rho : cfg.snr_rho_list)
            for (int k = 1; k <= 9; ++k)
            {
                const double p = k / 10.0;
                const double qd = find(BlockageMode::direct, Rr, rho).ecdf.quantile(p);
                const double qi = find(BlockageMode::with_irs, Rr, rho).ecdf.quantile(p);
                const double qr = find(BlockageMode::with_ris, Rr, rho).ecdf.quantile(p);
                dominance = dominance && qr >= qi && qi >= qd;
            }
    o.require(worst_radius <= 3.0, "R=2 vs R=8 worst decile gap " + fmt("%.2f", worst_radius) + " dB");
    o.require(dominance, "C-RIS >= C-IRS >= direct at deciles");
    return o;
}

// 10 ----------------------------------------------------------------------
std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome statistics(const SimConfig &base)
{
    Outcome o;
    const PathLossParams plp = pathloss_params(base);
    bool moments_ok = true;
    std::string moments;
    for (int b : {0, 1, 3})
    {
        Rng rng = make_rng(base.seed, {10, static_cast<std::uint64_t>(b)});
        const int n = 10000;
        std::vector<double> v(n);
        for (auto &x : v)
            x = sample_direct_pathloss(50.0, 28.0, b, plp, rng).loss_db;
        // Oracle: mean = 32.4 + 20 log10(r f) + mu_b(b), variance sigma_sh^2 + sigma_b^2.
        const double mu = 32.4 + 20 * std::log10(50.0 * 28.0) + (b ? 15.0 + 6.0 * (b - 1) : 0.0);
        const double sd = std::sqrt(9.0 + (b ? 16.0 : 0.0));
        const double zm = std::abs(mean(v) - mu) / (sd / std::sqrt(double(n)));
        const double zs = std::abs(stddev(v) - sd) / (sd / std::sqrt(2.0 * (n - 1)));
        moments_ok = moments_ok && zm < 3 && zs < 3;
        moments += (moments.empty() ? "" : ",") + std::string("b=") + std::to_string(b) + " z " + fmt("%.2f", zm) +
                   "/" + fmt("%.2f", zs);
    }
    o.require(moments_ok, "path loss moments (" + moments + ")");

    TrafficConfig tc = traffic_config(base, 40.0, 100.0);
    std::vector<int> counts;
    for (long t = 0; t < 1000; ++t)
    {
        Rng rng = trial_rng(base.seed, Purpose::traffic, 40.0, 100.0, t);
        const Scenario s = generate_traffic(tc, rng);
        counts.insert(counts.end(), s.lane_draws.begin(), s.lane_draws.end());
    }
    const ChiSquareResult chi = chi_square_poisson(counts, 40.0 * base.road_length / 1000.0);
    o.require(chi.p_value > 0.01, "lane counts chi2 p = " + fmt("%.3f", chi.p_value));

    SimConfig small = base;
    small.trials = 500;
    small.snr_trials = 6;
    small.reduced_elements = 10;
    const fs::path root = fs::temp_directory_path() / ("cirsim_accept_" + std::to_string(::getpid()));
    bool same = true;
    std::size_t files = 0;
    for (const char *cmd : {"blockage", "snr-ecdf", "scenario-dump"})
    {
        const auto a = run_command(small, cmd, root / "a");
        const auto b = run_command(small, cmd, root / "b");
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            same = same && slurp(a[i]) == slurp(b[i]) && !slurp(a[i]).empty();
            same = same && slurp(a[i].string() + ".meta.json") == slurp(b[i].string() + ".meta.json");
            ++files;
        }
    }
    fs::remove_all(root);
    o.require(same && files > 0, "byte-identical reruns (" + std::to_string(files) + " files)");
    return o;
}

} // namespace

int main()
{
    SimConfig cfg;
    cfg.threads = 0;
    struct Criterion
    {
        int id;
        const char *name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "phase identities", phase_identities},
        {2, "generalized reflection residual", snell},
        {3, "coherence and phase sign", coherence},
        {4, "matrix vs scalar cascaded channel", brute_force},
        {5, "elevation gain and width", [&] { return gain_elevation(cfg); }},
        {6, "azimuth width", [&] { return gain_azimuth(cfg); }},
        {7, "frequency trend", [&] { return gain_frequency(cfg); }},
        {8, "blockage probability", [&] { return blockage(cfg); }},
        {9, "SNR ECDF (reduced elements)", [&] { return snr(cfg); }},
        {10, "statistical model and determinism", [&] { return statistics(cfg); }},
    };
    int failed = 0;
    for (const auto &c : criteria)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
