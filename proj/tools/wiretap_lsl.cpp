// SPDX-License-Identifier: Apache-2.0
//
// wiretap-lsl: large-system secrecy rates of correlated MIMO wiretap channels
// Copyright (C) 2026 The wiretap-lsl authors
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

// wiretap-lsl: secrecy-rate sweeps for correlated MIMO wiretap channels.
//
//   wiretap-lsl run --config <path> [--preset fig2|fig3|fig4|fig5] [--out <csv>] [--seed <u64>]
//                   [--mc <n>] [--no-mc] [--no-timestamp]
//
// Exit codes: 0 success, 1 configuration error, 2 every grid point failed.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <wiretap/experiment.hpp>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_config = 1;
    constexpr int exit_runtime = 2;
}

int main(int argc, char **argv)
{
    CLI::App app{"Large-system and Monte Carlo secrecy rates of correlated MIMO wiretap channels"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> mc;
    bool no_mc = false;
    bool no_timestamp = false;
    bool quiet = false;

    CLI::App *run = app.add_subcommand("run", "Run a sweep and write CSV");
    run->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    run->add_option("--preset", preset, "Base configuration: fig2, fig3, fig4 or fig5")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
    run->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
    run->add_option("--seed", seed, "Monte Carlo seed");
    run->add_option("--mc", mc, "Monte Carlo realizations per point")->check(CLI::PositiveNumber);
    run->add_flag("--no-mc", no_mc, "Skip the Monte Carlo pipeline");
    run->add_flag("--no-timestamp", no_timestamp, "Omit the '# generated' header line");
    run->add_flag("-q,--quiet", quiet, "No progress output on stderr");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    wiretap::ExperimentConfig config;
    try
    {
        if (config_path.empty() && preset.empty())
            throw wiretap::ValidationError("either --config or --preset is required");
        if (!preset.empty())
            config = wiretap::figure_preset(preset);
        if (!config_path.empty())
            config = wiretap::parse_config(config_path, config);
        if (seed)
            config.seed = *seed;
        if (mc)
            config.mc_realizations = *mc;
        if (!out_path.empty())
            config.output_path = out_path;
        wiretap::validate(config);
    }
    catch (const wiretap::Error &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }

    wiretap::SweepOptions options;
    options.run_mc = !no_mc;
    if (!quiet)
        options.on_row = [](const wiretap::SweepRow &r)
        {
            std::cerr << wiretap::to_string(r.strategy) << " @ " << r.sweep_value;
            if (r.rs_lsl)
                std::cerr << "  rs_lsl=" << wiretap::nats_to_bits(*r.rs_lsl) << " bit";
            if (r.rs_mc)
                std::cerr << "  rs_mc=" << wiretap::nats_to_bits(*r.rs_mc) << " bit";
            if (!r.error.empty())
                std::cerr << "  [" << r.error << ']';
            std::cerr << '\n';
        };

    const wiretap::SweepResult result = wiretap::run_sweep(config, options);

    if (config.output_path.empty() || config.output_path == "-")
        wiretap::write_csv(result, std::cout, !no_timestamp);
    else
    {
        std::ofstream out(config.output_path);
        if (!out)
        {
            std::cerr << "cannot write '" << config.output_path << "'\n";
            return exit_runtime;
        }
        wiretap::write_csv(result, out, !no_timestamp);
    }
    return result.all_failed() ? exit_runtime : exit_ok;
}
