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

#include "cirsim/link.hpp"

#include <cmath>

namespace cirsim
{

double plan_azimuth(const Vec3 &from, const Vec3 &to) { return std::atan2(to.y - from.y, to.x - from.x); }

Codebook build_codebooks(const Vec3 &p_t, const Vec3 &p_r, std::span<const Vec3> relays, int K)
{
    if (K < 1)
        fail("build_codebooks: K must be >= 1");
    Codebook cb;
    cb.entries.reserve(relays.size() + 1);
    const double theta_d = plan_azimuth(p_t, p_r);
    cb.entries.push_back({kDirectEntry, theta_d, theta_d, steering_vector(K, theta_d), steering_vector(K, theta_d)});
    for (std::size_t c = 0; c < relays.size(); ++c)
    {
        const double tt = plan_azimuth(p_t, relays[c]);
        const double tr = plan_azimuth(relays[c], p_r);
        cb.entries.push_back({static_cast<int>(c), tt, tr, steering_vector(K, tt), steering_vector(K, tr)});
    }
    return cb;
}

double received_power(const ComplexMatrix &H, const ComplexVector &f, const ComplexVector &w)
{
    return std::norm(w.dot(H * f)); // dot() conjugates w
}

LinkResult select_from_powers(const Codebook &codebook, std::vector<double> powers)
{
    if (powers.size() != codebook.entries.size() || powers.empty())
        fail("select_beams: one power per codebook entry required");
    LinkResult r;
    for (std::size_t i = 1; i < powers.size(); ++i)
        if (powers[i] > powers[static_cast<std::size_t>(r.selected)])
            r.selected = static_cast<int>(i);
    r.relay = codebook.entries[static_cast<std::size_t>(r.selected)].relay;
    r.power = powers[static_cast<std::size_t>(r.selected)];
    r.powers = std::move(powers);
    return r;
}

LinkResult select_beams(const Codebook &codebook, const ComplexMatrix &H)
{
    std::vector<double> powers;
    powers.reserve(codebook.entries.size());
    for (const auto &e : codebook.entries)
        powers.push_back(received_power(H, e.f, e.w));
    return select_from_powers(codebook, std::move(powers));
}

double snr_db_from_power(double power, double sigma_s_dbm, double sigma_n_dbm, int K)
{
    return sigma_s_dbm - sigma_n_dbm + to_db(power / K);
}

double compute_snr(const ComplexMatrix &H, const ComplexVector &f, const ComplexVector &w, double sigma_s_dbm,
                   double sigma_n_dbm, int K)
{
    return snr_db_from_power(received_power(H, f, w), sigma_s_dbm, sigma_n_dbm, K);
}

} // namespace cirsim
