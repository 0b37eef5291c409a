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

#include "cirsim/output.hpp"

#include <cstdio>
#include <fstream>

#include "cirsim/types.hpp"

namespace cirsim
{

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        fail("Table::add: row width does not match the header", ErrorCode::internal);
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell &cell)
{
    if (const auto *d = std::get_if<double>(&cell))
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.9g", *d);
        return buf;
    }
    if (const auto *i = std::get_if<long long>(&cell))
        return std::to_string(*i);
    return std::get<std::string>(cell);
}

std::string to_csv(const Table &table)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out += (i ? "," : "") + table.columns[i];
    out += '\n';
    for (const auto &row : table.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + format_cell(row[i]);
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path &path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail("cannot open '" + path.string() + "' for writing", ErrorCode::io);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out)
        fail("write to '" + path.string() + "' failed", ErrorCode::io);
}

void write_csv(const std::filesystem::path &path, const Table &table) { write_text(path, to_csv(table)); }

nlohmann::ordered_json sidecar_json(const SimConfig &config, std::string_view subcommand, std::string_view file)
{
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["subcommand"] = std::string(subcommand);
    j["file"] = std::string(file);
    j["seed"] = config.seed;
    j["config"] = config_to_json(config);
    return j;
}

void write_sidecar(const std::filesystem::path &data_file, const SimConfig &config, std::string_view subcommand)
{
    const auto meta = data_file.string() + ".meta.json";
    write_text(meta, sidecar_json(config, subcommand, data_file.filename().string()).dump(2) + "\n");
}

} // namespace cirsim
