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
#include <random>

#include "cirsim/stats.hpp"
#include "cirsim/types.hpp"

using namespace cirsim;

TEST_CASE("wilson interval")
{
    // z = 1.96, 20 / 100: centre (0.2 + 1.96^2/200) / (1 + 1.96^2/100).
    const Proportion p = wilson_interval(20, 100);
    const double z = 1.959963984540054, n = 100, ph = 0.2;
    const double denom = 1 + z * z / n;
    const double centre = (ph + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
    CHECK(p.p == 0.2);
    CHECK(p.ci.lo == doctest::Approx(centre - half));
    CHECK(p.ci.hi == doctest::Approx(centre + half));
    const Proportion zero = wilson_interval(0, 50);
    CHECK(zero.ci.lo == doctest::Approx(0.0));
    CHECK(zero.ci.hi > 0.0);
    CHECK_THROWS_AS(wilson_interval(5, 0), Error);
    CHECK_THROWS_AS(wilson_interval(6, 5), Error);
}

TEST_CASE("ecdf and quantiles")
{
    const Ecdf e({3.0, 1.0, 2.0, 4.0});
    CHECK(e.quantile(0.0) == 1.0);
    CHECK(e.quantile(1.0) == 4.0);
    CHECK(e.median() == 2.5);
    CHECK(e.quantile(0.25) == doctest::Approx(1.75));
    CHECK(e.cdf(0.5) == 0.0);
    CHECK(e.cdf(2.0) == 0.5);
    CHECK(e.cdf(10.0) == 1.0);
    CHECK(quantile({5.0}, 0.3) == 5.0);
    CHECK_THROWS_AS(Ecdf(std::vector<double>{}).median(), Error);
}

TEST_CASE("moments")
{
    const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(mean(v) == 5.0);
    CHECK(stddev(v) == doctest::Approx(std::sqrt(32.0 / 7.0)));
}

TEST_CASE("bootstrap interval brackets the median")
{
    Rng rng(3);
    std::normal_distribution<double> n(10.0, 2.0);
    std::vector<double> v(400);
    for (auto &x : v)
        x = n(rng);
    Rng boot(8);
    const Interval ci = bootstrap_median_ci(v, 500, boot);
    const double med = Ecdf(v).median();
    CHECK(ci.lo <= med);
    CHECK(ci.hi >= med);
    // Asymptotic standard error of the median: 1.2533 sigma / sqrt(n).
    CHECK(ci.hi - ci.lo == doctest::Approx(2 * 1.96 * 1.2533 * 2.0 / 20.0).epsilon(0.35));
}

TEST_CASE("chi-square against Poisson")
{
    Rng rng(99);
    std::poisson_distribution<int> pois(20.0);
    std::vector<int> counts(2000);
    for (auto &c : counts)
        c = pois(rng);
    const ChiSquareResult good = chi_square_poisson(counts, 20.0);
    CHECK(good.dof > 5);
    CHECK(good.p_value > 0.01);
    const ChiSquareResult bad = chi_square_poisson(counts, 23.0);
    CHECK(bad.p_value < 1e-6);
}

TEST_CASE("angular width")
{
    // Triangle peaking at 0 dB, slope 1 dB/deg: -3 dB points at +-3 deg.
    std::vector<double> a, v;
    for (int i = -100; i <= 100; ++i)
    {
        a.push_back(i * 0.1);
        v.push_back(-std::abs(i * 0.1));
    }
    CHECK(angular_width(a, v) == doctest::Approx(6.0));
    CHECK(angular_width(a, v, 1.0) == doctest::Approx(2.0));
    // Never drops: width is the grid.
    std::vector<double> flat(a.size(), -1.0);
    CHECK(angular_width(a, flat) == doctest::Approx(20.0));
}

TEST_CASE("histogram density")
{
    const std::vector<double> v{0.5, 1.5, 1.5, 2.5, -4.0, 99.0};
    const Histogram h = histogram_density(v, 0.0, 3.0, 3);
    REQUIRE(h.density.size() == 3);
    double integral = 0.0;
    for (double d : h.density)
        integral += d * h.bin_width();
    CHECK(integral == doctest::Approx(1.0));
    CHECK(h.density[1] == doctest::Approx(2.0 / 6.0));
    CHECK(h.density[0] == doctest::Approx(2.0 / 6.0));
    CHECK(h.center(2) == doctest::Approx(2.5));
}
