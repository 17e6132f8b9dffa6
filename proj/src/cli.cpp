// SPDX-License-Identifier: Apache-2.0
//
// wptsim - beam scanning and link simulation for phased-array wireless power transfer
// Copyright (C) 2026 wptsim contributors
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

#include "wpt/cli.hpp"

#include "wpt/scenario.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

namespace wpt::cli
{

namespace
{

constexpr double pi = std::numbers::pi;

// Flags shared by every subcommand. Values override the config file.
struct CommonOptions
{
    std::string config_path;
    std::string out_flag;
    std::string model;
    double quantize_deg = 0;
    bool quantize_set = false;
    std::string mask_path;
    double rb_m = 0;
    bool rb_set = false;
    long long upsilon = 0;
    bool upsilon_set = false;
};

void add_common_flags(CLI::App& cmd, CommonOptions& opt)
{
    cmd.add_option("--config", opt.config_path, "scenario config file")->required();
    cmd.add_option("--out", opt.out_flag, "output directory (default: $WPTSIM_OUT or '.')");
    cmd.add_option("--model", opt.model, "channel model: exact | decomposed");
    cmd.add_option("--quantize", opt.quantize_deg, "phase shifter step in degrees")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--mask", opt.mask_path, "element on/off mask file");
    cmd.add_option("--rb", opt.rb_m, "near-field boundary override in meters")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--upsilon", opt.upsilon, "distance grid size override")
        ->check(CLI::PositiveNumber);
}

void capture_flag_presence(CLI::App& cmd, CommonOptions& opt)
{
    opt.quantize_set = cmd.count("--quantize") > 0;
    opt.rb_set = cmd.count("--rb") > 0;
    opt.upsilon_set = cmd.count("--upsilon") > 0;
}

Scenario load_scenario(const CommonOptions& opt)
{
    ScenarioConfig config = ScenarioConfig::load(opt.config_path);
    if (!opt.model.empty())
    {
        if (opt.model == "exact")
            config.model = ChannelModel::exact;
        else if (opt.model == "decomposed")
            config.model = ChannelModel::decomposed;
        else
            throw ConfigError("--model must be 'exact' or 'decomposed', got '" + opt.model + "'");
    }
    if (opt.quantize_set)
        config.quantize_lsb_deg = opt.quantize_deg;
    if (!opt.mask_path.empty())
        config.mask_file = opt.mask_path;
    if (opt.rb_set)
        config.r_b_m = opt.rb_m;
    if (opt.upsilon_set)
        config.upsilon_d = static_cast<Eigen::Index>(opt.upsilon);
    return build_scenario(config);
}

// Output directory precedence: --out flag, then WPTSIM_OUT, then cwd.
std::filesystem::path resolve_out_dir(const CommonOptions& opt)
{
    std::string dir = opt.out_flag;
    if (dir.empty())
    {
        if (const char* env = std::getenv("WPTSIM_OUT"); env != nullptr && *env != '\0')
            dir = env;
        else
            dir = ".";
    }
    std::filesystem::create_directories(dir);
    return dir;
}

void write_csv(const std::filesystem::path& dir, const std::string& name,
               const std::string& contents)
{
    const std::string path = (dir / name).string();
    io::write_file(path, contents);
    std::cout << "wrote " << path << "\n";
}

std::string power_cell(double watts)
{
    return io::format_number(watts) + "," + io::format_number(io::watts_to_dbm(watts));
}

double degrees_in_turn(double radians)
{
    double value = std::fmod(radians * 180.0 / pi, 360.0);
    if (value < 0)
        value += 360.0;
    if (value >= 360.0)
        value -= 360.0;
    return value + 0.0; // folds negative zero into plain zero
}

// DC harvest and end-to-end efficiency for one excitation at one pose.
struct LinkFigures
{
    double dc_w = 0;
    double efficiency = 0;
};

LinkFigures link_figures(const Scenario& scenario, const ReceiverPose<double>& pose,
                         const Excitation<double>& x)
{
    const auto channel =
        make_channel(scenario.ctx, scenario.tx, pose, scenario.rx_local, scenario.model);
    const auto waves = received_waves(channel, x);
    const auto report =
        combined_dc_power(waves, scenario.efficiency, scenario.rx_local.anchor_index);
    LinkFigures figures;
    figures.dc_w = report.combined_dc;
    if (scenario.options.mask)
        figures.efficiency =
            transfer_efficiency(report.combined_dc, scenario.tx.spec, *scenario.options.mask);
    else
        figures.efficiency = transfer_efficiency(report.combined_dc, scenario.tx.spec);
    return figures;
}

int cmd_scan(const CommonOptions& opt)
{
    const Scenario scenario = load_scenario(opt);
    const auto dir = resolve_out_dir(opt);
    const auto probe = make_probe(scenario);
    const auto outcome =
        beam_scan(probe, scenario.ctx, scenario.tx, scenario.codebook, scenario.options);

    std::string far = "beam_index,u,v,valid,power_w,power_dbm\n";
    for (const auto& beam : scenario.codebook.far_beams)
    {
        far += std::to_string(beam.index) + "," + io::format_number(beam.direction.u) + "," +
               io::format_number(beam.direction.v) + "," + (beam.valid ? "1" : "0") + ",";
        const auto& power = outcome.far.powers[static_cast<std::size_t>(beam.index - 1)];
        far += power ? power_cell(*power) : ",";
        far += "\n";
    }
    write_csv(dir, "far_powers.csv", far);

    std::string near = "grid_index,r_m,power_w,power_dbm\n";
    for (Eigen::Index i = 1; i <= scenario.codebook.distance_grid.size(); ++i)
        near += std::to_string(i) + "," + io::format_number(scenario.codebook.distance(i)) +
                "," + power_cell(outcome.near.powers(i - 1)) + "\n";
    write_csv(dir, "near_powers.csv", near);

    const double far_best =
        *outcome.far.powers[static_cast<std::size_t>(outcome.far.k_star - 1)];
    const double near_best = outcome.near.powers(outcome.near.i_star - 1);
    const auto figures = link_figures(scenario, scenario.pose, outcome.final_excitation);

    std::string summary = "k_star,xi_u,xi_v,r_opt_m,far_best_w,near_best_w,improvement_db,"
                          "near_selected,probe_calls,dc_power_w,efficiency\n";
    summary += std::to_string(outcome.far.k_star) + "," +
               io::format_number(outcome.xi_opt.u) + "," + io::format_number(outcome.xi_opt.v) +
               "," + io::format_number(outcome.near.r_opt) + "," + io::format_number(far_best) +
               "," + io::format_number(near_best) + "," +
               io::format_number(10.0 * std::log10(near_best / far_best)) + "," +
               (outcome.near_selected ? "1" : "0") + "," + std::to_string(outcome.probe_calls) +
               "," + io::format_number(figures.dc_w) + "," +
               io::format_number(figures.efficiency) + "\n";
    write_csv(dir, "summary.csv", summary);
    return 0;
}

int cmd_phase_map(const CommonOptions& opt, double u, double v, std::optional<double> r)
{
    const Scenario scenario = load_scenario(opt);
    const auto dir = resolve_out_dir(opt);

    const DirectionUV<double> xi{u, v};
    if (!xi.valid())
        throw ConfigError("beam direction (u, v) lies outside the unit disk");
    if (r && *r <= 0)
        throw ConfigError("--r must be positive");

    Excitation<double> x = r ? near_field_excitation(scenario.ctx, scenario.tx, xi, *r)
                             : far_field_excitation(scenario.ctx, scenario.tx, xi);
    x = conditioned(x, scenario.options);

    const auto& spec = scenario.tx.spec;
    std::string map;
    for (Eigen::Index row = 0; row < spec.n_rows; ++row)
    {
        for (Eigen::Index col = 0; col < spec.n_cols; ++col)
        {
            const Eigen::Index n = row * spec.n_cols + col;
            map += io::format_number(degrees_in_turn(x.phases(n)));
            map += (col + 1 < spec.n_cols) ? "," : "\n";
        }
    }
    write_csv(dir, "phase_map.csv", map);
    return 0;
}

enum class SweepAxis
{
    z_distance,
    y_offset
};

enum class SweepCompare
{
    proposed,
    far_only,
    both
};

int cmd_sweep(const CommonOptions& opt, SweepAxis axis, double from, double to, double step,
              SweepCompare compare)
{
    const Scenario scenario = load_scenario(opt);
    const auto dir = resolve_out_dir(opt);

    if (step <= 0)
        throw ConfigError("--step must be positive");
    if (to < from)
        throw ConfigError("--to must not be less than --from");

    const bool want_proposed = compare != SweepCompare::far_only;
    const bool want_far = compare != SweepCompare::proposed;

    std::string csv = (axis == SweepAxis::z_distance) ? "z_m" : "y_m";
    if (want_proposed)
        csv += ",proposed_dc_w,proposed_efficiency";
    if (want_far)
        csv += ",far_only_dc_w,far_only_efficiency";
    csv += "\n";

    for (Eigen::Index i = 0;; ++i)
    {
        const double value = from + static_cast<double>(i) * step;
        if (value > to + step * 1e-9)
            break;

        Vec3<double> position = scenario.pose.anchor_position();
        if (axis == SweepAxis::z_distance)
            position.z() = value;
        else
            position.y() = value;
        const ReceiverPose<double> pose(position, scenario.pose.attitude());
        const auto probe = make_probe(scenario, pose);

        csv += io::format_number(value);
        if (want_proposed)
        {
            const auto outcome = beam_scan(probe, scenario.ctx, scenario.tx,
                                           scenario.codebook, scenario.options);
            const auto figures = link_figures(scenario, pose, outcome.final_excitation);
            csv += "," + io::format_number(figures.dc_w) + "," +
                   io::format_number(figures.efficiency);
        }
        if (want_far)
        {
            const auto far = run_far_scan(probe, scenario.ctx, scenario.tx,
                                          scenario.codebook, scenario.options);
            const auto x = conditioned(
                far_field_excitation(scenario.ctx, scenario.tx,
                                     scenario.codebook.beam(far.k_star).direction),
                scenario.options);
            const auto figures = link_figures(scenario, pose, x);
            csv += "," + io::format_number(figures.dc_w) + "," +
                   io::format_number(figures.efficiency);
        }
        csv += "\n";
    }
    write_csv(dir, "sweep.csv", csv);
    return 0;
}

int cmd_export_codebook(const CommonOptions& opt)
{
    const Scenario scenario = load_scenario(opt);
    const auto dir = resolve_out_dir(opt);

    const auto& lsb = scenario.options.quantize_lsb;
    long long levels = 0;
    if (lsb)
        levels = std::llround(2 * pi / *lsb);

    std::string csv = "beam_index,element_index,u,v,phase_deg";
    if (lsb)
        csv += ",word";
    csv += "\n";

    for (const auto& beam : scenario.codebook.far_beams)
    {
        if (!beam.valid)
            continue;
        Excitation<double> x =
            far_field_excitation(scenario.ctx, scenario.tx, beam.direction);
        x = conditioned(x, scenario.options);
        for (Eigen::Index n = 0; n < x.size(); ++n)
        {
            csv += std::to_string(beam.index) + "," + std::to_string(n + 1) + "," +
                   io::format_number(beam.direction.u) + "," +
                   io::format_number(beam.direction.v) + "," +
                   io::format_number(degrees_in_turn(x.phases(n)));
            if (lsb)
            {
                const long long word = std::llround(x.phases(n) / *lsb);
                csv += "," + std::to_string(((word % levels) + levels) % levels);
            }
            csv += "\n";
        }
    }
    write_csv(dir, "codebook.csv", csv);
    return 0;
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"wptsim - beam scanning and link simulation for phased-array "
                 "wireless power transfer"};
    app.require_subcommand(1);

    CommonOptions scan_opt;
    CLI::App* scan_cmd = app.add_subcommand("scan", "run the two-phase beam scan");
    add_common_flags(*scan_cmd, scan_opt);

    CommonOptions map_opt;
    double map_u = 0;
    double map_v = 0;
    double map_r = 0;
    CLI::App* map_cmd =
        app.add_subcommand("phase-map", "export the element phase matrix for one beam");
    add_common_flags(*map_cmd, map_opt);
    map_cmd->add_option("--u", map_u, "beam direction u component")->required();
    map_cmd->add_option("--v", map_v, "beam direction v component")->required();
    CLI::Option* map_r_opt =
        map_cmd->add_option("--r", map_r, "focus distance in meters (near-field beam)");

    CommonOptions sweep_opt;
    std::string sweep_axis = "z-distance";
    std::string sweep_compare = "both";
    double sweep_from = 0;
    double sweep_to = 0;
    double sweep_step = 0;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "scan over receiver positions and compare schemes");
    add_common_flags(*sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--axis", sweep_axis, "z-distance | y-offset")
        ->check(CLI::IsMember({"z-distance", "y-offset"}));
    sweep_cmd->add_option("--from", sweep_from, "start value in meters")->required();
    sweep_cmd->add_option("--to", sweep_to, "end value in meters")->required();
    sweep_cmd->add_option("--step", sweep_step, "step in meters")->required();
    sweep_cmd->add_option("--compare", sweep_compare, "proposed | far-only | both")
        ->check(CLI::IsMember({"proposed", "far-only", "both"}));

    CommonOptions export_opt;
    CLI::App* export_cmd =
        app.add_subcommand("export-codebook", "export per-beam element phases and words");
    add_common_flags(*export_cmd, export_opt);

    try
    {
        app.parse(argc, argv);

        if (*scan_cmd)
        {
            capture_flag_presence(*scan_cmd, scan_opt);
            return cmd_scan(scan_opt);
        }
        if (*map_cmd)
        {
            capture_flag_presence(*map_cmd, map_opt);
            std::optional<double> r;
            if (map_r_opt->count() > 0)
                r = map_r;
            return cmd_phase_map(map_opt, map_u, map_v, r);
        }
        if (*sweep_cmd)
        {
            capture_flag_presence(*sweep_cmd, sweep_opt);
            const SweepAxis axis =
                sweep_axis == "z-distance" ? SweepAxis::z_distance : SweepAxis::y_offset;
            const SweepCompare compare = sweep_compare == "proposed" ? SweepCompare::proposed
                                         : sweep_compare == "far-only" ? SweepCompare::far_only
                                                                       : SweepCompare::both;
            return cmd_sweep(sweep_opt, axis, sweep_from, sweep_to, sweep_step, compare);
        }
        capture_flag_presence(*export_cmd, export_opt);
        return cmd_export_codebook(export_opt);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace wpt::cli
