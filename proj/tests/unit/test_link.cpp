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

#include "cirsim/link.hpp"

using namespace cirsim;

TEST_CASE("codebook layout")
{
    const Vec3 pt{0, 0, 1.5}, pr{0, 100, 1.5};
    const std::vector<Vec3> relays{{5, 50, 0.75}, {-5, 40, 0.75}};
    const Codebook cb = build_codebooks(pt, pr, relays, 4);
    REQUIRE(cb.entries.size() == 3);
    CHECK(cb.entries[0].relay == kDirectEntry);
    CHECK(cb.entries[0].theta_t == doctest::Approx(kPi / 2));
    CHECK(cb.entries[1].relay == 0);
    CHECK(cb.entries[1].theta_t == doctest::Approx(std::atan2(50.0, 5.0)));
    CHECK(cb.entries[1].theta_r == doctest::Approx(std::atan2(50.0, -5.0)));
    CHECK(cb.entries[2].theta_t == doctest::Approx(std::atan2(40.0, -5.0)));
    for (const auto &e : cb.entries)
    {
        CHECK(e.f.size() == 4);
        CHECK(e.f.norm() == doctest::Approx(2.0)); // unit-modulus entries
        CHECK((e.f - steering_vector(4, e.theta_t)).norm() == 0.0);
    }
    CHECK_THROWS_AS(build_codebooks(pt, pr, relays, 0), Error);
}

TEST_CASE("matched beams capture the rank-one channel")
{
    const int K = 8;
    const double th = 0.9;
    const ComplexMatrix H = array_response(K, th) * array_response(K, th).adjoint();
    const ComplexVector f = steering_vector(K, th);
    // |w^H a a^H f|^2 = (K / K)^2 * K^2 = K^2.
    CHECK(received_power(H, f, f) == doctest::Approx(double(K * K)));
    CHECK(received_power(H, f, steering_vector(K, th + 0.5)) < received_power(H, f, f));
}

TEST_CASE("selection is the argmax, earliest on ties")
{
    Codebook cb;
    cb.entries.resize(4);
    cb.entries[1].relay = 0;
    cb.entries[2].relay = 1;
    cb.entries[3].relay = 2;
    LinkResult r = select_from_powers(cb, {1.0, 5.0, 5.0, 2.0});
    CHECK(r.selected == 1);
    CHECK(r.relay == 0);
    CHECK(r.power == 5.0);
    r = select_from_powers(cb, {3.0, 3.0, 1.0, 1.0});
    CHECK(r.selected == 0);
    CHECK(r.relay == kDirectEntry);
    CHECK_THROWS_AS(select_from_powers(cb, {1.0}), Error);

    // select_beams agrees with exhaustive evaluation.
    const Vec3 pt{0, 0, 0}, pr{3, 80, 0};
    const std::vector<Vec3> relays{{6, 30, 0}, {-6, 60, 0}};
    const Codebook real = build_codebooks(pt, pr, relays, 4);
    const double th = real.entries[2].theta_t;
    const ComplexMatrix H = array_response(4, real.entries[2].theta_r) * array_response(4, th).adjoint();
    const LinkResult best = select_beams(real, H);
    for (std::size_t i = 0; i < real.entries.size(); ++i)
        CHECK(best.powers[i] <= best.power);
    CHECK(best.relay == 1);
}

TEST_CASE("snr")
{
    // 10 dBm, -88 dBm noise, power K -> 98 dB.
    CHECK(snr_db_from_power(8.0, 10.0, -88.0, 8) == doctest::Approx(98.0));
    CHECK(snr_db_from_power(0.8, 10.0, -88.0, 8) == doctest::Approx(88.0));
    const ComplexMatrix H = ComplexMatrix::Identity(2, 2) * 1e-5;
    const ComplexVector f = steering_vector(2, kPi / 2);
    const double p = received_power(H, f, f);
    CHECK(compute_snr(H, f, f, 10, -88, 2) == doctest::Approx(98.0 + 10 * std::log10(p / 2)));
}
