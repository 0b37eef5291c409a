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

#ifndef CIRSIM_STATS_HPP
#define CIRSIM_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "cirsim/random.hpp"

namespace cirsim
{

struct Interval
{
    double lo = 0.0;
    double hi = 0.0;
};

struct Proportion
{
    double p = 0.0;
    Interval ci;
};

// Wilson score interval (95 % by default).
Proportion wilson_interval(long successes, long trials, double z = 1.959963984540054);

/// Empirical CDF over a sorted copy of the sample.
class Ecdf
{
  public:
    Ecdf() = default;
    explicit Ecdf(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    // Linear interpolation between order statistics (Hyndman-Fan type 7).
    double quantile(double p) const;
    double median() const { return quantile(0.5); }
    // Fraction of samples <= x.
    double cdf(double x) const;

  private:
    std::vector<double> values_;
};

double quantile(std::vector<double> values, double p);

// Percentile bootstrap interval for the median.
Interval bootstrap_median_ci(std::span<const double> values, int resamples, Rng &rng, double level = 0.95);

double mean(std::span<const double> values);
// Unbiased sample standard deviation.
double stddev(std::span<const double> values);

struct ChiSquareResult
{
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

// Goodness of fit of integer counts to Poisson(mean). Cells are pooled so
// every expected count is at least 5; the tail is one open cell.
ChiSquareResult chi_square_poisson(std::span<const int> counts, double poisson_mean);

// Width of the contiguous region around the global peak where the curve stays
// within `drop_db` of the peak. Crossings are linearly interpolated; the
// region is truncated at the ends of the grid.
double angular_width(std::span<const double> angles, std::span<const double> values_db, double drop_db = 3.0);

struct Histogram
{
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> density; // integrates to 1 over [lo, hi]
    double bin_width() const { return density.empty() ? 0.0 : (hi - lo) / double(density.size()); }
    double center(std::size_t i) const { return lo + (double(i) + 0.5) * bin_width(); }
};

// Values outside [lo, hi] are clamped into the edge bins.
Histogram histogram_density(std::span<const double> values, double lo, double hi, int bins);

} // namespace cirsim

#endif
