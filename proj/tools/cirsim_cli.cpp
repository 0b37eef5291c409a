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

// Command-line front end. Talks to the simulator exclusively through the
// public C API in <cirsim/cirsim.h>.

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <cirsim/cirsim.h>

namespace
{

using ConfigPtr = std::unique_ptr<cirsim_config, decltype(&cirsim_config_destroy)>;

int report(cirsim_status s, const std::string &context)
{
    std::fprintf(stderr, "cirsim: %s: %s (%s)\n", context.c_str(), cirsim_last_error(), cirsim_status_string(s));
    return s == CIRSIM_ERR_IO || s == CIRSIM_ERR_INTERNAL ? 1 : 2;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"cirsim: mmWave V2V links relayed by conformal metasurfaces on car doors"};
    app.set_version_flag("--version", std::string(cirsim_version()));
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_file;
    std::string out_dir = "out";
    bool list_keys = false;
    app.add_option("--config", config_file, "JSON config file (flags > CIRSIM_* env > file > defaults)");
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_flag("--list-keys", list_keys, "print every config key with its default and exit");

    ConfigPtr defaults(nullptr, cirsim_config_destroy);
    {
        cirsim_config *raw = nullptr;
        if (const cirsim_status s = cirsim_config_create(&raw); s != CIRSIM_OK)
            return report(s, "startup");
        defaults.reset(raw);
    }

    // One --<key> option per config key, mirroring the JSON schema.
    std::map<std::string, std::string> overrides;
    std::vector<std::string> keys;
    for (size_t i = 0; i < cirsim_config_key_count(); ++i)
    {
        const std::string key = cirsim_config_key_name(i);
        keys.push_back(key);
        char buf[512];
        std::string def;
        if (cirsim_config_get(defaults.get(), key.c_str(), buf, sizeof buf, nullptr) == CIRSIM_OK)
            def = buf;
        app.add_option_function<std::string>(
               "--" + key, [&overrides, key](const std::string &v) { overrides[key] = v; },
               std::string(cirsim_config_key_help(i)) + " [default: " + def + "]")
            ->type_name("VALUE");
    }

    std::string command;
    for (size_t i = 0; i < cirsim_command_count(); ++i)
    {
        const std::string name = cirsim_command_name(i);
        app.add_subcommand(name, "run " + name)->callback([&command, name] { command = name; });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }
    if (list_keys)
    {
        for (const auto &k : keys)
        {
            char buf[512];
            cirsim_config_get(defaults.get(), k.c_str(), buf, sizeof buf, nullptr);
            std::printf("%s = %s\n", k.c_str(), buf);
        }
        return 0;
    }
    if (command.empty())
    {
        std::fprintf(stderr, "%s", app.help().c_str());
        return 2;
    }

    ConfigPtr config(nullptr, cirsim_config_destroy);
    {
        cirsim_config *raw = nullptr;
        if (const cirsim_status s = cirsim_config_create(&raw); s != CIRSIM_OK)
            return report(s, "startup");
        config.reset(raw);
    }
    if (!config_file.empty())
        if (const cirsim_status s = cirsim_config_load_file(config.get(), config_file.c_str()); s != CIRSIM_OK)
            return report(s, "config");
    if (const cirsim_status s = cirsim_config_apply_env(config.get()); s != CIRSIM_OK)
        return report(s, "environment");
    for (const auto &key : keys)
        if (const auto it = overrides.find(key); it != overrides.end())
            if (const cirsim_status s = cirsim_config_set(config.get(), key.c_str(), it->second.c_str());
                s != CIRSIM_OK)
                return report(s, "--" + key);
    if (const cirsim_status s = cirsim_config_validate(config.get()); s != CIRSIM_OK)
        return report(s, "config");
    if (const cirsim_status s = cirsim_run(config.get(), command.c_str(), out_dir.c_str()); s != CIRSIM_OK)
        return report(s, command);
    return 0;
}
