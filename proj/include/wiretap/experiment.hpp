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

#ifndef WIRETAP_EXPERIMENT_HPP
#define WIRETAP_EXPERIMENT_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "montecarlo.hpp"

namespace wiretap
{
    enum class SweepKind
    {
        Snr,
        NumEave,
        Spacing
    };

    inline std::string_view to_string(SweepKind k)
    {
        switch (k)
        {
        case SweepKind::Snr:
            return "snr";
        case SweepKind::NumEave:
            return "ne";
        case SweepKind::Spacing:
            return "spacing";
        }
        return "?";
    }

    // Everything needed to reproduce one sweep. Defaults are the shared preset values:
    // d = 1 wavelength, theta_M = 40 deg, theta_E = -10 deg, Delta = 5 deg, 10000 realizations.
    struct ExperimentConfig
    {
        Index m = 4;
        Index n_main = 4;
        Index n_eave = 2;
        double snr_main_db = 0.0;
        double snr_eave_db = 0.0;
        ArraySpec array_main{4, 1.0, 40.0, 5.0};
        ArraySpec array_eave{4, 1.0, -10.0, 5.0};
        std::vector<Strategy> strategies{Strategy::Isotropic, Strategy::WaterFilling, Strategy::GsvdBeamforming};
        std::size_t mc_realizations = 10000;
        std::uint64_t seed = 1;
        SweepKind sweep = SweepKind::Snr;
        std::vector<double> sweep_grid{0.0};
        std::string output_path;
        WaterfillGain waterfill_gain = WaterfillGain::Squared;
    };

    // Evenly spaced grid start, start + step, ..., up to stop (inclusive within rounding).
    inline std::vector<double> linear_grid(double start, double stop, double step)
    {
        if (!(step > 0.0) || stop < start)
            throw ValidationError("grid: need step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> grid(count);
        for (std::size_t i = 0; i < count; ++i)
            grid[i] = start + static_cast<double>(i) * step;
        return grid;
    }

    inline void validate(const ExperimentConfig &c)
    {
        if (c.m < 1)
            throw ValidationError("m must be >= 1");
        if (c.n_main < 1)
            throw ValidationError("n_main must be >= 1");
        if (c.n_eave < 1)
            throw ValidationError("n_eave must be >= 1");
        if (c.mc_realizations < 1)
            throw ValidationError("mc_realizations must be >= 1");
        if (!std::isfinite(c.snr_main_db) || !std::isfinite(c.snr_eave_db))
            throw ValidationError("snr_main_db and snr_eave_db must be finite");
        for (const ArraySpec *a : {&c.array_main, &c.array_eave})
        {
            if (!std::isfinite(a->spacing_wavelengths) || a->spacing_wavelengths < 0.0)
                throw ValidationError("antenna spacing must be finite and >= 0");
            if (!std::isfinite(a->mean_angle_deg))
                throw ValidationError("mean angle must be finite");
            if (!std::isfinite(a->angle_spread_deg) || a->angle_spread_deg <= 0.0)
                throw ValidationError("angle spread must be finite and > 0");
        }
        if (c.strategies.empty())
            throw ValidationError("strategies must not be empty");
        if (std::set<Strategy>(c.strategies.begin(), c.strategies.end()).size() != c.strategies.size())
            throw ValidationError("strategies must not repeat");
        if (c.sweep_grid.empty())
            throw ValidationError("sweep_grid must not be empty");
        for (std::size_t i = 0; i < c.sweep_grid.size(); ++i)
        {
            const double v = c.sweep_grid[i];
            if (!std::isfinite(v))
                throw ValidationError("sweep_grid entries must be finite");
            if (i > 0 && !(v > c.sweep_grid[i - 1]))
                throw ValidationError("sweep_grid must be strictly ascending");
            if (c.sweep == SweepKind::NumEave && (v < 1.0 || v != std::floor(v)))
                throw ValidationError("ne sweep_grid entries must be integers >= 1");
            if (c.sweep == SweepKind::Spacing && v < 0.0)
                throw ValidationError("spacing sweep_grid entries must be >= 0");
        }
    }

    // Built-in sweep configurations fig2 .. fig5.
    inline ExperimentConfig figure_preset(std::string_view name)
    {
        ExperimentConfig c;
        const auto snr_grid = linear_grid(-5.0, 20.0, 2.5);
        if (name == "fig2")
        {
            c.m = 6, c.n_main = 6, c.n_eave = 2;
            c.sweep = SweepKind::Snr;
            c.sweep_grid = snr_grid;
        }
        else if (name == "fig3")
        {
            c.m = 2, c.n_main = 3, c.n_eave = 4;
            c.sweep = SweepKind::Snr;
            c.sweep_grid = snr_grid;
        }
        else if (name == "fig4")
        {
            c.m = 4, c.n_main = 4, c.n_eave = 4;
            c.sweep = SweepKind::NumEave;
            c.sweep_grid = linear_grid(1.0, 12.0, 1.0);
        }
        else if (name == "fig5")
        {
            c.m = 4, c.n_main = 4, c.n_eave = 2;
            c.sweep = SweepKind::Spacing;
            c.sweep_grid = linear_grid(0.2, 3.0, 0.1);
        }
        else
            throw UnknownPreset("unknown preset '" + std::string(name) + "' (expected fig2, fig3, fig4 or fig5)");
        c.array_main.num_antennas = c.m;
        c.array_eave.num_antennas = c.m;
        return c;
    }

    namespace detail
    {
        inline std::pair<std::size_t, std::size_t> line_and_column(const std::string &text, std::size_t byte)
        {
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i < byte && i < text.size(); ++i)
            {
                if (text[i] == '\n')
                    ++line, col = 1;
                else
                    ++col;
            }
            return {line, col};
        }

        inline double number_field(const nlohmann::json &v, const std::string &key)
        {
            if (!v.is_number())
                throw ParseError("field '" + key + "': expected a number");
            return v.get<double>();
        }

        inline std::int64_t integer_field(const nlohmann::json &v, const std::string &key)
        {
            if (v.is_number_integer())
                return v.get<std::int64_t>();
            if (v.is_number_float() && v.get<double>() == std::floor(v.get<double>()))
                return static_cast<std::int64_t>(v.get<double>());
            throw ParseError("field '" + key + "': expected an integer");
        }

        inline std::string string_field(const nlohmann::json &v, const std::string &key)
        {
            if (!v.is_string())
                throw ParseError("field '" + key + "': expected a string");
            return v.get<std::string>();
        }
    }

    // Applies a flat JSON object of settings on top of `base`. Recognized keys:
    //   preset, m, n_main, n_eave, snr_main_db, snr_eave_db,
    //   spacing_main, spacing_eave, theta_main_deg, theta_eave_deg, spread_main_deg, spread_eave_deg,
    //   strategies, mc_realizations, seed, sweep, sweep_grid | (sweep_start, sweep_stop, sweep_step),
    //   output_path, waterfill_gain
    inline ExperimentConfig parse_config_text(const std::string &text, ExperimentConfig base = {})
    {
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            const auto [line, col] = detail::line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
            throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
        }
        if (!doc.is_object())
            throw ParseError("line 1: configuration must be a JSON object");

        ExperimentConfig c = std::move(base);
        if (doc.contains("preset"))
            c = figure_preset(detail::string_field(doc["preset"], "preset"));

        std::optional<double> range_start, range_stop, range_step;
        for (const auto &[key, value] : doc.items())
        {
            using detail::integer_field, detail::number_field, detail::string_field;
            if (key == "preset")
                continue;
            else if (key == "m")
                c.m = integer_field(value, key);
            else if (key == "n_main")
                c.n_main = integer_field(value, key);
            else if (key == "n_eave")
                c.n_eave = integer_field(value, key);
            else if (key == "snr_main_db")
                c.snr_main_db = number_field(value, key);
            else if (key == "snr_eave_db")
                c.snr_eave_db = number_field(value, key);
            else if (key == "spacing_main")
                c.array_main.spacing_wavelengths = number_field(value, key);
            else if (key == "spacing_eave")
                c.array_eave.spacing_wavelengths = number_field(value, key);
            else if (key == "theta_main_deg")
                c.array_main.mean_angle_deg = number_field(value, key);
            else if (key == "theta_eave_deg")
                c.array_eave.mean_angle_deg = number_field(value, key);
            else if (key == "spread_main_deg")
                c.array_main.angle_spread_deg = number_field(value, key);
            else if (key == "spread_eave_deg")
                c.array_eave.angle_spread_deg = number_field(value, key);
            else if (key == "mc_realizations")
            {
                const auto n = integer_field(value, key);
                if (n < 1)
                    throw ValidationError("mc_realizations must be >= 1");
                c.mc_realizations = static_cast<std::size_t>(n);
            }
            else if (key == "seed")
            {
                if (!value.is_number_unsigned())
                    throw ParseError("field 'seed': expected a nonnegative integer");
                c.seed = value.get<std::uint64_t>();
            }
            else if (key == "sweep")
            {
                const std::string s = string_field(value, key);
                if (s == "snr")
                    c.sweep = SweepKind::Snr;
                else if (s == "ne")
                    c.sweep = SweepKind::NumEave;
                else if (s == "spacing")
                    c.sweep = SweepKind::Spacing;
                else
                    throw ParseError("field 'sweep': expected snr, ne or spacing, got '" + s + "'");
            }
            else if (key == "sweep_grid")
            {
                if (!value.is_array())
                    throw ParseError("field 'sweep_grid': expected an array of numbers");
                c.sweep_grid.clear();
                for (const auto &v : value)
                    c.sweep_grid.push_back(number_field(v, key));
            }
            else if (key == "sweep_start")
                range_start = number_field(value, key);
            else if (key == "sweep_stop")
                range_stop = number_field(value, key);
            else if (key == "sweep_step")
                range_step = number_field(value, key);
            else if (key == "strategies")
            {
                if (!value.is_array())
                    throw ParseError("field 'strategies': expected an array of strings");
                c.strategies.clear();
                for (const auto &v : value)
                {
                    try
                    {
                        c.strategies.push_back(parse_strategy(string_field(v, key)));
                    }
                    catch (const InvalidArgument &e)
                    {
                        throw ParseError(std::string("field 'strategies': ") + e.what());
                    }
                }
            }
            else if (key == "output_path")
                c.output_path = string_field(value, key);
            else if (key == "waterfill_gain")
            {
                const std::string s = string_field(value, key);
                if (s == "squared")
                    c.waterfill_gain = WaterfillGain::Squared;
                else if (s == "literal")
                    c.waterfill_gain = WaterfillGain::Literal;
                else
                    throw ParseError("field 'waterfill_gain': expected squared or literal, got '" + s + "'");
            }
            else
                throw ParseError("unknown field '" + key + "'");
        }

        if (range_start || range_stop || range_step)
        {
            if (doc.contains("sweep_grid"))
                throw ParseError("field 'sweep_grid': cannot be combined with sweep_start/sweep_stop/sweep_step");
            if (!range_start || !range_stop || !range_step)
                throw ParseError("fields 'sweep_start', 'sweep_stop' and 'sweep_step' must be given together");
            c.sweep_grid = linear_grid(*range_start, *range_stop, *range_step);
        }

        if (c.m < 1)
            throw ValidationError("m must be >= 1");
        c.array_main.num_antennas = c.m;
        c.array_eave.num_antennas = c.m;
        validate(c);
        return c;
    }

    inline ExperimentConfig parse_config(const std::string &path, ExperimentConfig base = {})
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open configuration file '" + path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_config_text(buffer.str(), std::move(base));
    }

    // Link statistics at one sweep point. An SNR sweep moves both links together and keeps the
    // configured main/eavesdropper offset.
    inline std::pair<ChannelStatistics, ChannelStatistics> build_links(const ExperimentConfig &c, double sweep_value)
    {
        double snr_main_db = c.snr_main_db;
        double snr_eave_db = c.snr_eave_db;
        Index n_eave = c.n_eave;
        ArraySpec main = c.array_main;
        ArraySpec eave = c.array_eave;
        main.num_antennas = eave.num_antennas = c.m;
        switch (c.sweep)
        {
        case SweepKind::Snr:
            snr_eave_db = sweep_value + (c.snr_eave_db - c.snr_main_db);
            snr_main_db = sweep_value;
            break;
        case SweepKind::NumEave:
            n_eave = static_cast<Index>(sweep_value);
            break;
        case SweepKind::Spacing:
            main.spacing_wavelengths = eave.spacing_wavelengths = sweep_value;
            break;
        }
        return {make_statistics(db_to_linear(snr_main_db), main, c.n_main),
                make_statistics(db_to_linear(snr_eave_db), eave, n_eave)};
    }

    struct SweepRow
    {
        double sweep_value = 0.0;
        Strategy strategy = Strategy::Isotropic;
        std::optional<double> rs_lsl;       // nats per antenna
        std::optional<double> rs_mc;        // nats per antenna
        std::optional<double> mc_std_error; // nats per antenna
        int outer_iterations = 0;
        std::string error;
        bool failed = false;
    };

    struct SweepResult
    {
        SweepKind sweep = SweepKind::Snr;
        Index m = 1;
        std::vector<SweepRow> rows;

        bool all_failed() const
        {
            return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const SweepRow &r) { return r.failed; });
        }
    };

    struct SweepOptions
    {
        bool run_mc = true;
        McOptions mc;
        std::function<void(const SweepRow &)> on_row; // progress hook
    };

    // One row per (grid point, strategy). Failures are recorded in the row and the sweep goes on.
    inline SweepResult run_sweep(const ExperimentConfig &config, const SweepOptions &options = {})
    {
        validate(config);
        SweepResult result;
        result.sweep = config.sweep;
        result.m = config.m;
        OptimizeOptions opt_options;
        opt_options.waterfill_gain = config.waterfill_gain;

        for (double value : config.sweep_grid)
        {
            std::optional<std::pair<ChannelStatistics, ChannelStatistics>> links;
            std::string link_error;
            try
            {
                links.emplace(build_links(config, value));
            }
            catch (const std::exception &e)
            {
                link_error = e.what();
            }

            for (Strategy s : config.strategies)
            {
                SweepRow row;
                row.sweep_value = value;
                row.strategy = s;
                if (!links)
                {
                    row.failed = true;
                    row.error = link_error;
                }
                else
                {
                    try
                    {
                        const auto &[stats_m, stats_e] = *links;
                        const OptimizationResult opt = optimize(s, stats_m, stats_e, opt_options);
                        row.rs_lsl = opt.evaluation.rate.rs;
                        row.outer_iterations = opt.outer_iterations;
                        if (!opt.converged)
                            row.error = "warning: outer loop did not converge";
                        if (options.run_mc)
                        {
                            const McEstimate mc = mc_secrecy_rate(stats_m, stats_e, opt.precoder,
                                                                  config.mc_realizations, config.seed, options.mc);
                            row.rs_mc = mc.mean;
                            row.mc_std_error = mc.std_error;
                        }
                    }
                    catch (const std::exception &e)
                    {
                        row.failed = true;
                        row.error = e.what();
                    }
                }
                if (options.on_row)
                    options.on_row(row);
                result.rows.push_back(std::move(row));
            }
        }
        return result;
    }

    inline double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

    inline const char *csv_header =
        "sweep_var,sweep_value,strategy,rs_lsl_per_antenna_bits,rs_lsl_total_bits,rs_mc_per_antenna_bits,"
        "rs_mc_std_error,outer_iterations,error";

    namespace detail
    {
        inline std::string format_number(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        inline std::string format_optional(const std::optional<double> &v, double scale = 1.0)
        {
            return v ? format_number(nats_to_bits(*v) * scale) : std::string();
        }

        // Quotes a CSV field when it contains a separator, quote or newline.
        inline std::string csv_escape(const std::string &s)
        {
            if (s.find_first_of(",\"\n\r") == std::string::npos)
                return s;
            std::string out = "\"";
            for (char ch : s)
            {
                if (ch == '"')
                    out += '"';
                out += ch;
            }
            return out + "\"";
        }

        inline std::string utc_timestamp()
        {
            const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&now, &tm);
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
            return buf;
        }
    }

    // Rates are written in bits per channel use: per antenna, and total (per antenna x M).
    inline void write_csv(const SweepResult &result, std::ostream &out, bool timestamp = true)
    {
        if (timestamp)
            out << "# generated " << detail::utc_timestamp() << '\n';
        out << csv_header << '\n';
        const double m = static_cast<double>(result.m);
        for (const SweepRow &r : result.rows)
        {
            out << to_string(result.sweep) << ',' << detail::format_number(r.sweep_value) << ',' << to_string(r.strategy)
                << ',' << detail::format_optional(r.rs_lsl) << ',' << detail::format_optional(r.rs_lsl, m) << ','
                << detail::format_optional(r.rs_mc) << ',' << detail::format_optional(r.mc_std_error) << ','
                << r.outer_iterations << ',' << detail::csv_escape(r.error) << '\n';
        }
    }

    inline std::vector<ValidationRow> validate_lsl(const ExperimentConfig &config, std::span<const double> snr_grid_db,
                                                   std::size_t n, std::uint64_t seed)
    {
        ExperimentConfig snr_config = config;
        snr_config.sweep = SweepKind::Snr;
        auto links = [&](double snr_db) { return build_links(snr_config, snr_db); };
        return validate_lsl(links, snr_grid_db, std::span<const Strategy>(config.strategies), n, seed);
    }
}

#endif
