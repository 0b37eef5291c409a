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

#include "cirsim/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace cirsim
{

Vec3 Scenario::array_position(int v) const
{
    const Vehicle &veh = vehicles.at(static_cast<std::size_t>(v));
    return {veh.x, veh.y, vehicle.height};
}

Vec3 Scenario::door_center(int v, Side side) const
{
    const Vehicle &veh = vehicles.at(static_cast<std::size_t>(v));
    const double half = 0.5 * vehicle.width;
    return {side == Side::right ? veh.x + half : veh.x - half, veh.y, vehicle.door_height};
}

MountPose Scenario::door_pose(int v, Side side, int N, double d_n) const
{
    const double yaw = side_yaw(side);
    const Vec3 shift = rotate_z({0.0, 0.5 * (N - 1) * d_n, 0.0}, yaw);
    return {door_center(v, side) - shift, yaw};
}

Scenario generate_traffic(const TrafficConfig &config, Rng &rng)
{
    const RoadConfig &road = config.road;
    const VehicleConfig &vc = config.vehicle;
    if (road.lanes < 1 || !(road.lane_width > 0.0) || !(road.road_length > 0.0))
        fail("generate_traffic: invalid road configuration");
    if (!(vc.length > 0.0) || !(vc.width > 0.0) || vc.width > road.lane_width || vc.length > road.road_length)
        fail("generate_traffic: vehicle footprint must fit in a lane");
    if (!(config.rho >= 0.0))
        fail("generate_traffic: rho must be non-negative");
    if (!(config.r_d > vc.length))
        fail("generate_traffic: r_d must exceed the vehicle length");

    Scenario s;
    s.road = road;
    s.vehicle = vc;
    const int tx_lane = config.tx_lane < 0 ? road.lanes / 2 : config.tx_lane;
    if (tx_lane >= road.lanes)
        fail("generate_traffic: tx_lane out of range");
    const double half_l = 0.5 * vc.length;
    const double y_t = config.placement == TxPlacement::road_start ? half_l : 0.5 * (road.road_length - config.r_d);
    const double y_r = y_t + config.r_d;
    if (y_t < half_l || y_r > road.road_length - half_l)
        fail("generate_traffic: TxV-RxV pair does not fit on the road");
    const double lane_x = road.lane_center_x(tx_lane);
    s.vehicles.push_back({tx_lane, lane_x, y_t});
    s.vehicles.push_back({tx_lane, lane_x, y_r});

    const double mean = config.rho * road.road_length / 1000.0;
    s.lane_draws.assign(static_cast<std::size_t>(road.lanes), 0);
    std::uniform_real_distribution<double> pos(half_l, road.road_length - half_l);
    for (int lane = 0; lane < road.lanes; ++lane)
    {
        const int count = mean > 0.0 ? std::poisson_distribution<int>(mean)(rng) : 0;
        s.lane_draws[static_cast<std::size_t>(lane)] = count;
        std::vector<double> occupied;
        for (const auto &v : s.vehicles)
            if (v.lane == lane)
                occupied.push_back(v.y);
        const double x = road.lane_center_x(lane);
        for (int i = 0; i < count; ++i)
        {
            bool placed = false;
            for (int attempt = 0; attempt <= config.max_retries && !placed; ++attempt)
            {
                const double y = pos(rng);
                const bool clash = std::any_of(occupied.begin(), occupied.end(),
                                               [&](double o) { return std::abs(o - y) < vc.length; });
                if (!clash)
                {
                    occupied.push_back(y);
                    s.vehicles.push_back({lane, x, y});
                    placed = true;
                }
            }
            if (!placed)
                ++s.saturated;
        }
    }
    return s;
}

bool segment_hits_box(const Vec3 &from, const Vec3 &to, double cx, double cy, double half_x, double half_y)
{
    // Liang-Barsky clipping of from + t (to - from), t in (0, 1).
    const double dx = to.x - from.x, dy = to.y - from.y;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {from.x - (cx - half_x), (cx + half_x) - from.x, from.y - (cy - half_y),
                         (cy + half_y) - from.y};
    double t0 = 0.0, t1 = 1.0;
    for (int i = 0; i < 4; ++i)
    {
        if (p[i] == 0.0)
        {
            if (q[i] < 0.0)
                return false;
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
        if (t0 > t1)
            return false;
    }
    return t1 > 0.0 && t0 < 1.0;
}

int count_blockers(const Scenario &scenario, const Vec3 &from, const Vec3 &to, std::initializer_list<int> excluded)
{
    const double hx = 0.5 * scenario.vehicle.width, hy = 0.5 * scenario.vehicle.length;
    int count = 0;
    for (int v = 0; v < static_cast<int>(scenario.vehicles.size()); ++v)
    {
        if (v == scenario.txv || v == scenario.rxv || std::find(excluded.begin(), excluded.end(), v) != excluded.end())
            continue;
        const Vehicle &veh = scenario.vehicles[static_cast<std::size_t>(v)];
        if (segment_hits_box(from, to, veh.x, veh.y, hx, hy))
            ++count;
    }
    return count;
}

namespace
{

bool faces(const Scenario &s, int v, Side side, const Vec3 &p)
{
    const Vec3 d = p - s.door_center(v, side);
    return d.dot(Scenario::door_normal(side)) > 0.0;
}

template <class Pred> std::vector<RelayCandidate> collect(const Scenario &s, Pred pred)
{
    std::vector<RelayCandidate> out;
    for (int v = 0; v < static_cast<int>(s.vehicles.size()); ++v)
    {
        if (v == s.txv || v == s.rxv)
            continue;
        for (Side side : {Side::left, Side::right})
            if (faces(s, v, side, s.p_t()) && faces(s, v, side, s.p_r()) && pred(v, side))
                out.push_back({v, side});
    }
    return out;
}

} // namespace

std::vector<RelayCandidate> candidate_relays_irs(const Scenario &scenario, double door_length)
{
    const SpecularArea area = specular_area(scenario.p_t(), scenario.p_r(), scenario.road, door_length);
    return collect(scenario, [&](int v, Side side) { return area.contains(scenario.door_center(v, side)); });
}

std::vector<RelayCandidate> candidate_relays_ris(const Scenario &scenario, double max_range)
{
    if (!(max_range > 0.0))
        fail("candidate_relays_ris: max_range must be positive");
    return collect(scenario, [&](int v, Side side) {
        const Vec3 c = scenario.door_center(v, side);
        return (c - scenario.p_t()).norm() <= max_range && (c - scenario.p_r()).norm() <= max_range;
    });
}

BlockageReport blockage_report(const Scenario &scenario, const std::vector<RelayCandidate> &candidates)
{
    BlockageReport report;
    report.direct = count_blockers(scenario, scenario.p_t(), scenario.p_r());
    for (const auto &c : candidates)
    {
        const Vec3 door = scenario.door_center(c.vehicle, c.side);
        report.relays.push_back({c, count_blockers(scenario, scenario.p_t(), door, {c.vehicle}),
                                 count_blockers(scenario, door, scenario.p_r(), {c.vehicle})});
    }
    return report;
}

bool blockage_event(const Scenario &scenario, BlockageMode mode, const CandidateRules &rules)
{
    if (count_blockers(scenario, scenario.p_t(), scenario.p_r()) == 0)
        return false;
    if (mode == BlockageMode::direct)
        return true;
    const auto candidates = mode == BlockageMode::with_irs ? candidate_relays_irs(scenario, rules.door_length)
                                                           : candidate_relays_ris(scenario, rules.max_range);
    for (const auto &c : candidates)
    {
        const Vec3 door = scenario.door_center(c.vehicle, c.side);
        if (count_blockers(scenario, scenario.p_t(), door, {c.vehicle}) == 0 &&
            count_blockers(scenario, door, scenario.p_r(), {c.vehicle}) == 0)
            return false;
    }
    return true;
}

} // namespace cirsim
