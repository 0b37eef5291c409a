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

#ifndef CIRSIM_SCENARIO_HPP
#define CIRSIM_SCENARIO_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cirsim/geometry.hpp"
#include "cirsim/random.hpp"

namespace cirsim
{

struct VehicleConfig
{
    double length = 5.0;
    double width = 1.8;
    double height = 1.5;
    double door_height = 0.75; // height of the door metasurface centre
};

enum class TxPlacement
{
    road_start,
    road_center
};

struct TrafficConfig
{
    RoadConfig road;
    VehicleConfig vehicle;
    double rho = 10.0;    // vehicles per km per lane
    double r_d = 50.0;    // TxV-RxV distance, m
    int tx_lane = -1;     // -1 selects the centre lane
    TxPlacement placement = TxPlacement::road_start;
    int max_retries = 100;
};

struct Vehicle
{
    int lane = 0;
    double x = 0.0; // footprint centre
    double y = 0.0;
};

struct RelayCandidate
{
    int vehicle = 0;
    Side side = Side::right;

    bool operator==(const RelayCandidate &) const = default;
};

/// One random highway snapshot. Vehicles 0 and 1 are TxV and RxV.
struct Scenario
{
    RoadConfig road;
    VehicleConfig vehicle;
    std::vector<Vehicle> vehicles;
    int txv = 0;
    int rxv = 1;
    std::vector<int> lane_draws; // Poisson draw per lane
    int saturated = 0;           // vehicles dropped after exhausting retries

    Vec3 array_position(int v) const;
    Vec3 door_center(int v, Side side) const;
    static Vec3 door_normal(Side side) { return side == Side::right ? Vec3{1, 0, 0} : Vec3{-1, 0, 0}; }
    // Pose that centres an N-column grid (spacing d_n) on the door.
    MountPose door_pose(int v, Side side, int N, double d_n) const;

    Vec3 p_t() const { return array_position(txv); }
    Vec3 p_r() const { return array_position(rxv); }
};

Scenario generate_traffic(const TrafficConfig &config, Rng &rng);

// Vehicles whose plan-view footprint meets the open segment from -> to,
// skipping the TxV, RxV and `excluded`.
int count_blockers(const Scenario &scenario, const Vec3 &from, const Vec3 &to,
                   std::initializer_list<int> excluded = {});

// Exact test of the open plan-view segment against a footprint rectangle.
bool segment_hits_box(const Vec3 &from, const Vec3 &to, double cx, double cy, double half_x, double half_y);

std::vector<RelayCandidate> candidate_relays_irs(const Scenario &scenario, double door_length);
std::vector<RelayCandidate> candidate_relays_ris(const Scenario &scenario, double max_range);

struct RelayBlockage
{
    RelayCandidate relay;
    int first = 0;  // TxV -> door
    int second = 0; // door -> RxV
};

struct BlockageReport
{
    int direct = 0;
    std::vector<RelayBlockage> relays;
};

BlockageReport blockage_report(const Scenario &scenario, const std::vector<RelayCandidate> &candidates);

enum class BlockageMode
{
    direct,
    with_irs,
    with_ris
};

struct CandidateRules
{
    double door_length = 1.0;
    double max_range = 150.0;
};

bool blockage_event(const Scenario &scenario, BlockageMode mode, const CandidateRules &rules);

} // namespace cirsim

#endif
