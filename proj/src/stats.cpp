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

#include "cirsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "cirsim/types.hpp"

namespace cirsim
{

Proportion wilson_interval(long successes, long trials, double z)
{
    if (trials <= 0 || successes < 0 || successes > trials)
        fail("wilson_interval: need 0 <= successes <= trials, trials > 0");
    const double n = double(trials);
    const double p = double(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return {p, {std::max(0.0, centre - half), std::min(1.0, centre + half)}};
}

Ecdf::Ecdf(std::vector<double> values) : values_(std::move(values))
{
    std::sort(values_.begin(), values_.end());
}

double Ecdf::quantile(double p) const
{
    if (values_.empty())
        fail("Ecdf: empty sample");
    p = std::clamp(p, 0.0, 1.0);
    const double h = p * double(values_.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(h));
    if (i + 1 >= values_.size())
        return values_.back();
    return values_[i] + (h - double(i)) * (values_[i + 1] - values_[i]);
}

double Ecdf::cdf(double x) const
{
    if (values_.empty())
        return 0.0;
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return double(it - values_.begin()) / double(values_.size());
}

double quantile(std::vector<double> values, double p) { return Ecdf(std::move(values)).quantile(p); }

Interval bootstrap_median_ci(std::span<const double> values, int resamples, Rng &rng, double level)
{
    if (values.empty() || resamples < 1)
        fail("bootstrap_median_ci: need a non-empty sample and resamples >= 1");
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    std::vector<double> medians(static_cast<std::size_t>(resamples));
    std::vector<double> draw(values.size());
    for (auto &m : medians)
    {
        for (auto &d : draw)
            d = values[pick(rng)];
        m = quantile(draw, 0.5);
    }
    const Ecdf e(std::move(medians));
    const double a = 0.5 * (1.0 - level);
    return {e.quantile(a), e.quantile(1.0 - a)};
}

double mean(std::span<const double> values)
{
    if (values.empty())
        return 0.0;
    return std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
}

double stddev(std::span<const double> values)
{
    if (values.size() < 2)
        return 0.0;
    const double m = mean(values);
    double s = 0.0;
    for (double v : values)
        s += (v - m) * (v - m);
    return std::sqrt(s / double(values.size() - 1));
}

ChiSquareResult chi_square_poisson(std::span<const int> counts, double poisson_mean)
{
    if (counts.empty() || !(poisson_mean > 0.0))
        fail("chi_square_poisson: need counts and a positive mean");
    const boost::math::poisson_distribution<double> pois(poisson_mean);
    const double n = double(counts.size());
    const int max_count = *std::max_element(counts.begin(), counts.end());

    // Build cells [lo_k, hi_k] greedily from the left, each with expectation >= 5.
    struct Cell
    {
        int lo, hi;
        double expected;
    };
    std::vector<Cell> cells;
    int lo = 0;
    double acc = 0.0;
    for (int k = 0; k <= max_count + 1; ++k)
    {
        acc += n * boost::math::pdf(pois, k);
        if (acc >= 5.0)
        {
            cells.push_back({lo, k, acc});
            lo = k + 1;
            acc = 0.0;
        }
    }
    // Open right tail absorbs everything from `lo` upward.
    const double tail = n * (lo > 0 ? boost::math::cdf(boost::math::complement(pois, lo - 1)) : 1.0);
    if (tail >= 5.0 || cells.empty())
        cells.push_back({lo, std::numeric_limits<int>::max(), tail});
    else
    {
        cells.back().hi = std::numeric_limits<int>::max();
        cells.back().expected += tail;
    }
    if (cells.size() < 2)
        return {0.0, 0, 1.0};

    std::vector<double> observed(cells.size(), 0.0);
    for (int c : counts)
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (c >= cells[i].lo && c <= cells[i].hi)
            {
                observed[i] += 1.0;
                break;
            }
    ChiSquareResult r;
    for (std::size_t i = 0; i < cells.size(); ++i)
        r.statistic += (observed[i] - cells[i].expected) * (observed[i] - cells[i].expected) / cells[i].expected;
    r.dof = static_cast<int>(cells.size()) - 1;
    r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(r.dof),
                                                         r.statistic));
    return r;
}

double angular_width(std::span<const double> angles, std::span<const double> values_db, double drop_db)
{
    if (angles.size() != values_db.size() || angles.size() < 2)
        fail("angular_width: need matching grids of at least two points");
    const std::size_t peak =
        static_cast<std::size_t>(std::max_element(values_db.begin(), values_db.end()) - values_db.begin());
    const double level = values_db[peak] - drop_db;
    auto cross = [&](std::size_t inside, std::size_t outside) {
        const double t = (values_db[inside] - level) / (values_db[inside] - values_db[outside]);
        return angles[inside] + t * (angles[outside] - angles[inside]);
    };
    std::size_t i = peak;
    while (i > 0 && values_db[i - 1] >= level)
        --i;
    const double left = i == 0 ? angles.front() : cross(i, i - 1);
    std::size_t j = peak;
    while (j + 1 < values_db.size() && values_db[j + 1] >= level)
        ++j;
    const double right = j + 1 == values_db.size() ? angles.back() : cross(j, j + 1);
    return std::abs(right - left);
}

Histogram histogram_density(std::span<const double> values, double lo, double hi, int bins)
{
    if (!(hi > lo) || bins < 1)
        fail("histogram_density: need hi > lo and bins >= 1");
    Histogram h{lo, hi, std::vector<double>(static_cast<std::size_t>(bins), 0.0)};
    if (values.empty())
        return h;
    const double w = h.bin_width();
    for (double v : values)
    {
        const auto b = static_cast<long>(std::floor((v - lo) / w));
        h.density[static_cast<std::size_t>(std::clamp<long>(b, 0, bins - 1))] += 1.0;
    }
    for (auto &d : h.density)
        d /= double(values.size()) * w;
    return h;
}

} // namespace cirsim
