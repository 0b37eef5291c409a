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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cirsim/phase.hpp"

using namespace cirsim;

namespace
{
const double lambda28 = 299792458.0 / 28e9;

CirsGeometry door(int M = 40, int N = 6, double R = 2.0)
{
    return CirsGeometry::build(M, N, R, lambda28 / 4, lambda28 / 4);
}

double sup_diff(const std::vector<double> &a, const std::vector<double> &b)
{
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}
} // namespace

TEST_CASE("wavevectors")
{
    const double k0 = kTwoPi / lambda28;
    const Wavevector a = incident_wavevector({0.0, kPi / 2}, lambda28);
    CHECK(a.kx == doctest::Approx(-k0));
    CHECK(std::abs(a.ky) < 1e-9);
    CHECK(std::abs(a.kz) < 1e-9);
    const Wavevector b = incident_wavevector({kPi / 2, kPi / 2}, lambda28);
    CHECK(std::abs(b.kx) < 1e-9);
    CHECK(b.ky == doctest::Approx(-k0));
    const Wavevector c = reflected_wavevector({0.3, 1.1}, lambda28);
    CHECK(c.vec().dot(unit_vector({0.3, 1.1})) == doctest::Approx(k0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int i = 0; i < 100; ++i)
        CHECK(incident_wavevector({2 * u(rng) - kPi, u(rng)}, lambda28).norm() == doctest::Approx(k0));
}

TEST_CASE("wrapping keeps the complex exponential")
{
    for (double raw : {-1e4, -7.0, -1e-15, 0.0, 3.0, kTwoPi, 2347.3, 1e5})
    {
        const double w = wrap_phase(raw);
        CHECK(w >= 0.0);
        CHECK(w < kTwoPi);
        CHECK(std::abs(std::polar(1.0, w) - std::polar(1.0, raw)) < 1e-10);
    }
}

TEST_CASE("profile container")
{
    PhaseProfile p = PhaseProfile::zeros(3, 2);
    CHECK(p.size() == 6);
    CHECK(p.amplitude(4) == 1.0);
    CHECK(p.row_constant());
    const std::vector<double> bad{0, 0, 0, 0, 0, 1.5};
    CHECK_THROWS_AS(p.set_amplitudes(bad), Error);
    const std::vector<double> ok{1, 1, 0.5, 0.5, 0, 0.25};
    p.set_amplitudes(ok);
    CHECK_FALSE(p.row_constant());
    const std::vector<double> raw{1, 2, 3};
    CHECK_THROWS_AS(PhaseProfile::from_raw(3, 2, raw), Error);
}

TEST_CASE("perpendicular profile")
{
    const auto g = door();
    const auto raw = perpendicular_phase_raw(g, lambda28);
    for (int n = 0; n < g.cols(); ++n)
        CHECK(raw[g.flat_index(g.rows() / 2, n)] == 0.0);
    for (int row = 0; row < g.rows(); ++row)
    {
        const double oracle = -(4 * kPi * g.radius() / lambda28) * (std::cos(g.psi(row)) - 1.0);
        CHECK(raw[g.flat_index(row, 3)] == doctest::Approx(oracle).epsilon(1e-12));
    }
    const auto flat = perpendicular_phase_raw(door(40, 6, 1e12), lambda28);
    for (double v : flat)
        CHECK(std::abs(v) < 1e-6);

    // Row m = 1 placed at psi = pi/2.
    const double lam = 0.010707;
    const auto wide = CirsGeometry::build(4, 1, 2.0, 2 * 2.0 * std::sin(kPi / 4), 0.01);
    REQUIRE(wide.psi(3) == doctest::Approx(kPi / 2));
    CHECK(perpendicular_phase_raw(wide, lam)[3] == doctest::Approx(2347.3).epsilon(1e-4));
}

TEST_CASE("preconfigured profile")
{
    const auto g = door();
    const auto perp = perpendicular_phase_raw(g, lambda28);
    CHECK(sup_diff(preconfigured_phase_raw(g, 0.0, lambda28), perp) == 0.0);
    for (double v : preconfigured_phase_raw(g, kPi / 2, lambda28))
        CHECK(std::abs(v) < 1e-12);
    const auto p75 = preconfigured_phase_raw(g, deg2rad(75), lambda28);
    for (std::size_t i = 0; i < perp.size(); ++i)
        CHECK(p75[i] == doctest::Approx(0.258819 * perp[i]).epsilon(1e-6));
    CHECK_THROWS_AS(preconfigured_phase_raw(g, -0.1, lambda28), Error);
    CHECK_THROWS_AS(preconfigured_phase_raw(g, 1.7, lambda28), Error);
}

TEST_CASE("specializations of the optimal profile")
{
    const auto g = door(30, 7, 1.3);
    const auto perp = perpendicular_phase_raw(g, lambda28);
    CHECK(sup_diff(optimal_phase_raw(g, {0, kPi / 2}, {0, kPi / 2}, lambda28), perp) < 1e-12);
    CHECK(sup_diff(elevation_phase_raw(g, kPi / 2, kPi / 2, lambda28), perp) < 1e-12);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> az(-kPi / 2, kPi / 2), el(0.0, kPi), bar(0.0, kPi / 2);
    for (int i = 0; i < 50; ++i)
    {
        const double ti = az(rng), to = az(rng);
        CHECK(sup_diff(optimal_phase_raw(g, {ti, kPi / 2}, {to, kPi / 2}, lambda28),
                       azimuth_phase_raw(g, ti, to, lambda28)) < 1e-9);
        const double t = bar(rng);
        CHECK(sup_diff(optimal_phase_raw(g, {t, kPi / 2}, {-t, kPi / 2}, lambda28),
                       preconfigured_phase_raw(g, t, lambda28)) < 1e-9);
        CHECK(sup_diff(azimuth_phase_raw(g, t, -t, lambda28), preconfigured_phase_raw(g, t, lambda28)) < 1e-9);

        const double pi_ = el(rng), po = el(rng);
        const auto e = elevation_phase_raw(g, pi_, po, lambda28);
        const auto printed = printed_elevation_phase_raw(g, pi_, po, lambda28);
        for (std::size_t k = 0; k < e.size(); k += 17)
            CHECK(std::abs(e[k]) == doctest::Approx(std::abs(printed[k])).epsilon(1e-9));
        for (int n = 0; n < g.cols(); ++n)
            CHECK(e[g.flat_index(g.rows() / 2, n)] == 0.0);
    }
}

TEST_CASE("planar limit and planar profile")
{
    const double d = lambda28 / 4;
    const int M = 400, N = 400;
    const auto g = CirsGeometry::build(M, N, 1e6, d, d);
    const AnglePair inc{0.4, 1.2}, refl{-0.9, 2.0};
    CHECK(sup_diff(optimal_phase_raw(g, inc, refl, lambda28), planar_phase_raw(M, N, d, d, inc, refl, lambda28)) <
          1e-3);

    const auto normal = planar_phase(8, 8, d, d, {0, kPi / 2}, {0, kPi / 2}, lambda28);
    for (double v : normal.phases())
        CHECK(std::abs(std::polar(1.0, v) - std::polar(1.0, normal.phase(0))) < 1e-12);
    CHECK(planar_phase(1, 1, d, d, inc, refl, lambda28).size() == 1);
}

TEST_CASE("reflected elevation")
{
    for (double psi : {0.0, 0.2, 0.7, 1.2, kPi / 2})
    {
        const auto o = reflected_elevation(kPi / 2, psi);
        REQUIRE(o.has_value());
        CHECK(*o == doctest::Approx(kPi / 2).epsilon(1e-12));
    }
    for (double phi : {0.1, 0.8, 1.9, 3.0})
        CHECK(*reflected_elevation(phi, 0.0) == doctest::Approx(kPi - phi));
    const auto o = reflected_elevation(kPi, kPi / 2);
    REQUIRE(o.has_value());
    CHECK(*o == doctest::Approx(kPi / 2));

    CHECK_FALSE(is_evanescent(kPi / 2, 0.0));
    CHECK(is_evanescent(0.0, kPi / 2));
    CHECK(-2 * std::sin(kPi / 4) - std::cos(kPi / 4) == doctest::Approx(-2.121).epsilon(1e-3));

    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j)
        {
            const double phi = kPi * i / 100, psi = kPi / 2 * j / 100;
            CHECK(is_evanescent(phi, psi) == !reflected_elevation(phi, psi).has_value());
        }
}

TEST_CASE("generalized reflection law")
{
    const double k0 = kTwoPi / lambda28;
    SUBCASE("flat mirror")
    {
        const Vec3 k = incident_wavevector({0.5, 1.0}, lambda28).vec();
        const Vec3 kb{k.x, -k.y, k.z}; // surface y = 0
        CHECK(snell_residual(0, 0, {}, k, kb) < 1e-9);
    }
    SUBCASE("phase field on a curved surface")
    {
        // Surface y = f(x, z) with Phi(x, z) = (k_bar - k) . (x, f(x, z), z).
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-1.0, 1.0), ang(0.0, kPi);
        for (int i = 0; i < 200; ++i)
        {
            const double fx = u(rng), fz = u(rng);
            const Vec3 k = incident_wavevector({2 * ang(rng), ang(rng)}, lambda28).vec();
            const Vec3 kb = reflected_wavevector({2 * ang(rng), ang(rng)}, lambda28).vec();
            const Vec3 dk = kb - k;
            const Vec3 grad = tangential_phase_gradient(fx, fz, dk.x + dk.y * fx, dk.z + dk.y * fz);
            CHECK(snell_residual(fx, fz, grad, k, kb) < 1e-9 * k0);
            CHECK(std::abs(grad.dot(surface_normal(fx, fz))) < 1e-9 * k0);

            // Perturb tangentially by 0.1 rad/m.
            const Vec3 nrm = surface_normal(fx, fz);
            const Vec3 t = Vec3{1.0, fx, 0.0}.normalized();
            const Vec3 tang = (t - nrm * t.dot(nrm)).normalized();
            CHECK(snell_residual(fx, fz, grad + tang * 0.1, k, kb) == doctest::Approx(0.1).epsilon(1e-6));
        }
    }
    SUBCASE("gradient reconstruction matches finite differences")
    {
        // f = 0.3 x^2 - 0.2 xz, Phi = 5 x + 2 z + 7 f.
        auto f = [](double x, double z) { return 0.3 * x * x - 0.2 * x * z; };
        auto phi = [&](double x, double z) { return 5 * x + 2 * z + 7 * f(x, z); };
        const double x = 0.4, z = -0.3, h = 1e-6;
        const double fx = (f(x + h, z) - f(x - h, z)) / (2 * h), fz = (f(x, z + h) - f(x, z - h)) / (2 * h);
        const double px = (phi(x + h, z) - phi(x - h, z)) / (2 * h), pz = (phi(x, z + h) - phi(x, z - h)) / (2 * h);
        const Vec3 g = tangential_phase_gradient(fx, fz, px, pz);
        // The 3D field 5x + 7y + 2z restricted to the surface has this gradient's tangential part.
        const Vec3 full{5, 7, 2};
        const Vec3 n = surface_normal(fx, fz);
        const Vec3 tangential = full - n * full.dot(n);
        CHECK(g.x == doctest::Approx(tangential.x).epsilon(1e-6));
        CHECK(g.y == doctest::Approx(tangential.y).epsilon(1e-6));
        CHECK(g.z == doctest::Approx(tangential.z).epsilon(1e-6));
    }
}
