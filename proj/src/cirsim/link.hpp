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

#ifndef CIRSIM_LINK_HPP
#define CIRSIM_LINK_HPP

#include <span>
#include <vector>

#include "cirsim/channel.hpp"

namespace cirsim
{

inline constexpr int kDirectEntry = -1;

struct CodebookEntry
{
    int relay = kDirectEntry; // candidate index, or kDirectEntry
    double theta_t = 0.0;
    double theta_r = 0.0;
    ComplexVector f;
    ComplexVector w;
};

struct Codebook
{
    std::vector<CodebookEntry> entries; // entries[0] is the direct entry
};

// Azimuth of the plan-view vector from -> to, via atan2.
double plan_azimuth(const Vec3 &from, const Vec3 &to);

Codebook build_codebooks(const Vec3 &p_t, const Vec3 &p_r, std::span<const Vec3> relays, int K);

struct LinkResult
{
    int selected = 0; // codebook position
    int relay = kDirectEntry;
    double power = 0.0; // |w^H H f|^2 of the selection
    double snr_db = 0.0;
    bool blocked = false;
    std::vector<double> powers;
};

double received_power(const ComplexMatrix &H, const ComplexVector &f, const ComplexVector &w);

LinkResult select_beams(const Codebook &codebook, const ComplexMatrix &H);
// Argmax over precomputed per-entry powers; ties go to the earliest entry.
LinkResult select_from_powers(const Codebook &codebook, std::vector<double> powers);

// SNR = sigma_s^2 |w^H H f|^2 / (K sigma_n^2), dB.
double snr_db_from_power(double power, double sigma_s_dbm, double sigma_n_dbm, int K);
double compute_snr(const ComplexMatrix &H, const ComplexVector &f, const ComplexVector &w, double sigma_s_dbm,
                   double sigma_n_dbm, int K);

} // namespace cirsim

#endif
