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

#ifndef CIRSIM_OUTPUT_HPP
#define CIRSIM_OUTPUT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cirsim/config.hpp"

namespace cirsim
{

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<double, long long, std::string>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

// Doubles use %.9g.
std::string format_cell(const Cell &cell);
std::string to_csv(const Table &table);

void write_text(const std::filesystem::path &path, std::string_view text);
void write_csv(const std::filesystem::path &path, const Table &table);

// <file>.meta.json next to the data file: schema version, subcommand, seed
// and the fully resolved config. Deliberately free of timestamps.
nlohmann::ordered_json sidecar_json(const SimConfig &config, std::string_view subcommand, std::string_view file);
void write_sidecar(const std::filesystem::path &data_file, const SimConfig &config, std::string_view subcommand);

} // namespace cirsim

#endif
