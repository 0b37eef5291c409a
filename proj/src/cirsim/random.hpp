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

#ifndef CIRSIM_RANDOM_HPP
#define CIRSIM_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cirsim
{

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of an independent substream keyed by the master seed plus any number
// of integer keys (trial index, grid coordinates, purpose tag...).
inline std::uint64_t substream_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t k : keys)
        h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    return h;
}

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
{
    return Rng(substream_seed(master, keys));
}

inline double uniform_phase(Rng &rng)
{
    return std::uniform_real_distribution<double>(0.0, 2.0 * 3.14159265358979323846)(rng);
}

} // namespace cirsim

#endif
