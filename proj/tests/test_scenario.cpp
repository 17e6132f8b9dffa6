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

#include "wpt/scenario.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace wpt;

namespace
{

const std::string minimal_config = R"(
frequency_hz = 5.8e9
tx.rows = 8
tx.cols = 8
tx.row_spacing_m = 0.0282
tx.col_spacing_m = 0.0282
tx.element_power_w = 0.1614
rx.rows = 4
rx.cols = 4
rx.row_spacing_m = 0.0282
rx.col_spacing_m = 0.0282
receiver.x_m = 0.0
receiver.y_m = 0.0
receiver.z_m = 0.5
codebook.upsilon_d = 35
)";

ScenarioConfig parse_text(const std::string& text)
{
    std::istringstream stream(text);
    return ScenarioConfig::parse(stream, "test.cfg", "");
}

std::string error_of(const std::string& text)
{
    try
    {
        parse_text(text);
    }
    catch (const ConfigError& e)
    {
        return e.what();
    }
    return {};
}

std::filesystem::path write_temp(const std::string& name, const std::string& contents)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream file(path, std::ios::binary);
    file << contents;
    return path;
}

std::string preset_path(const std::string& name)
{
    return (std::filesystem::path(WPTSIM_PRESET_DIR) / name).string();
}

} // namespace

TEST_CASE("minimal config parses with documented defaults")
{
    const auto config = parse_text(minimal_config);
    CHECK(config.frequency_hz == 5.8e9);
    CHECK(config.tx.n_rows == 8);
    CHECK(config.tx.per_element_power == 0.1614);
    CHECK(config.tx.element_gain == 1.0);
    CHECK(config.rx.n_rows == 4);
    REQUIRE(config.receiver_xyz_m.has_value());
    CHECK(config.receiver_xyz_m->z() == 0.5);
    CHECK(config.receiver_alpha_deg == 0.0);
    CHECK(config.delta_u == 2.0);
    CHECK(config.delta_v == 2.0);
    CHECK(config.upsilon_d == 35);
    CHECK(!config.r_b_m);
    CHECK(config.model == ChannelModel::exact);
    CHECK(!config.quantize_lsb_deg);
    CHECK(!config.mask_file);
    CHECK(!config.efficiency_file);
}

TEST_CASE("empty config reports every missing key at once")
{
    const std::string message = error_of("# nothing here\n");
    CHECK(message.find("missing required keys") != std::string::npos);
    CHECK(message.find("frequency_hz") != std::string::npos);
    CHECK(message.find("tx.rows") != std::string::npos);
    CHECK(message.find("tx.element_power_w") != std::string::npos);
    CHECK(message.find("rx.col_spacing_m") != std::string::npos);
    CHECK(message.find("codebook.upsilon_d") != std::string::npos);
    CHECK(message.find("receiver.x_m/y_m/z_m") != std::string::npos);
}

TEST_CASE("schema violations carry line numbers")
{
    SUBCASE("unknown key")
    {
        const std::string message = error_of(minimal_config + "transmitter.rows = 8\n");
        CHECK(message.find("unknown key 'transmitter.rows'") != std::string::npos);
        CHECK(message.find("test.cfg:16") != std::string::npos);
    }
    SUBCASE("bad number")
    {
        const std::string message =
            error_of(minimal_config + "codebook.delta_u = wide\n");
        CHECK(message.find("test.cfg:16") != std::string::npos);
        CHECK(message.find("expects a number") != std::string::npos);
        CHECK(message.find("'wide'") != std::string::npos);
    }
    SUBCASE("bad integer")
    {
        const std::string message = error_of(
            "tx.rows = 8.5\n" + minimal_config.substr(minimal_config.find("tx.cols")));
        CHECK(message.find("expects an integer") != std::string::npos);
    }
    SUBCASE("missing separator")
    {
        const std::string message = error_of(minimal_config + "stray token\n");
        CHECK(message.find("expected 'key = value'") != std::string::npos);
    }
    SUBCASE("duplicate key")
    {
        const std::string message = error_of(minimal_config + "frequency_hz = 2.4e9\n");
        CHECK(message.find("duplicate key 'frequency_hz'") != std::string::npos);
    }
}

TEST_CASE("receiver pose forms are mutually exclusive and complete")
{
    SUBCASE("both forms rejected")
    {
        const std::string message = error_of(minimal_config + "receiver.r_m = 1.0\n");
        CHECK(message.find("both cartesian and spherical") != std::string::npos);
    }
    SUBCASE("partial spherical form lists the missing pieces")
    {
        std::string text = minimal_config;
        const auto pos = text.find("receiver.x_m");
        text.erase(pos, text.find("codebook.") - pos);
        text += "receiver.r_m = 1.0\n";
        const std::string message = error_of(text);
        CHECK(message.find("receiver.theta_deg") != std::string::npos);
        CHECK(message.find("receiver.phi_deg") != std::string::npos);
    }
    SUBCASE("spherical form accepted")
    {
        std::string text = minimal_config;
        const auto pos = text.find("receiver.x_m");
        text.erase(pos, text.find("codebook.") - pos);
        text += "receiver.r_m = 2.0\nreceiver.theta_deg = 30.0\nreceiver.phi_deg = 90.0\n";
        const auto config = parse_text(text);
        REQUIRE(config.receiver_spherical.has_value());
        const auto scenario = build_scenario(config);
        CHECK(scenario.pose.range() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(scenario.pose.theta() == doctest::Approx(30.0 * 3.14159265358979 / 180).epsilon(1e-9));
    }
}

TEST_CASE("efficiency sources are mutually exclusive")
{
    const std::string message = error_of(minimal_config +
                                         "efficiency.constant = 0.5\n"
                                         "efficiency.file = curve.csv\n");
    CHECK(message.find("mutually exclusive") != std::string::npos);
}

TEST_CASE("build_scenario assembles geometry, codebook, and defaults")
{
    const auto scenario = build_scenario(parse_text(minimal_config));
    CHECK(scenario.ctx.frequency == 5.8e9);
    CHECK(scenario.tx.size() == 64);
    CHECK(scenario.rx_local.size() == 16);
    CHECK(scenario.rx_local.anchor_position().norm() == 0.0);
    CHECK(scenario.pose.anchor_position().z() == 0.5);
    CHECK(scenario.codebook.beam_count() == 256);
    CHECK(scenario.codebook.distance_grid.size() == 35);
    CHECK(scenario.boundary_m ==
          doctest::Approx(fraunhofer_distance(scenario.ctx, scenario.tx)).epsilon(1e-15));
    // Default rectifier efficiency is a flat 50 percent.
    CHECK(scenario.efficiency(0.003) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("near-field boundary resolution order")
{
    SUBCASE("explicit override wins over the diagonal")
    {
        const auto scenario = build_scenario(parse_text(
            minimal_config + "codebook.r_b_m = 9.0\ntx.aperture_diagonal_m = 0.29912\n"));
        CHECK(scenario.boundary_m == 9.0);
    }
    SUBCASE("diagonal wins over spacing-derived dimensions")
    {
        const auto scenario =
            build_scenario(parse_text(minimal_config + "tx.aperture_diagonal_m = 0.29912\n"));
        const double lambda = speed_of_light_mps / 5.8e9;
        CHECK(scenario.boundary_m ==
              doctest::Approx(2 * 0.29912 * 0.29912 / lambda).epsilon(1e-12));
        CHECK(scenario.boundary_m == doctest::Approx(3.462).epsilon(1e-3));
    }
    SUBCASE("aperture dimensions become element extents")
    {
        const auto config = parse_text(minimal_config +
                                       "tx.aperture_x_m = 0.21099\ntx.aperture_y_m = 0.21004\n");
        const auto scenario = build_scenario(config);
        REQUIRE(scenario.tx.spec.element_extent_x.has_value());
        CHECK(*scenario.tx.spec.element_extent_x ==
              doctest::Approx(0.21099 - 7 * 0.0282).epsilon(1e-9));
        const auto [dim_x, dim_y] = aperture_dimensions(scenario.tx.spec);
        CHECK(dim_x == doctest::Approx(0.21099).epsilon(1e-12));
        CHECK(dim_y == doctest::Approx(0.21004).epsilon(1e-12));
    }
    SUBCASE("aperture dimensions must cover the grid span")
    {
        CHECK_THROWS_AS(build_scenario(parse_text(minimal_config +
                                                  "tx.aperture_x_m = 0.1\n"
                                                  "tx.aperture_y_m = 0.21\n")),
                        ConfigError);
    }
    SUBCASE("aperture dimensions must be given together")
    {
        CHECK(error_of(minimal_config + "tx.aperture_x_m = 0.21\n")
                  .find("must be given together") != std::string::npos);
    }
}

TEST_CASE("conditioning options validate at load time")
{
    SUBCASE("valid shifter step accepted")
    {
        const auto scenario =
            build_scenario(parse_text(minimal_config + "quantize.lsb_deg = 5.625\n"));
        REQUIRE(scenario.options.quantize_lsb.has_value());
        CHECK(*scenario.options.quantize_lsb ==
              doctest::Approx(5.625 * 3.14159265358979 / 180).epsilon(1e-12));
    }
    SUBCASE("step must divide a full turn")
    {
        CHECK_THROWS_AS(
            build_scenario(parse_text(minimal_config + "quantize.lsb_deg = 7.0\n")),
            ConfigError);
    }
    SUBCASE("mask file loads and must keep at least one element")
    {
        std::string bits;
        for (int n = 0; n < 64; ++n)
            bits += (n % 2 == 0) ? "1\n" : "0\n";
        const auto mask_path = write_temp("wpt_scenario_mask.txt", bits);
        const auto scenario = build_scenario(
            parse_text(minimal_config + "mask.file = " + mask_path.string() + "\n"));
        REQUIRE(scenario.options.mask.has_value());
        CHECK(scenario.options.mask->count() == 32);

        const auto zeros_path = write_temp("wpt_scenario_mask0.txt", std::string(64, '0'));
        CHECK_THROWS_AS(build_scenario(parse_text(minimal_config + "mask.file = " +
                                                  zeros_path.string() + "\n")),
                        ConfigError);
    }
    SUBCASE("mask element count is checked")
    {
        const auto short_path = write_temp("wpt_scenario_mask_short.txt", "1 0 1\n");
        CHECK_THROWS_AS(build_scenario(parse_text(minimal_config + "mask.file = " +
                                                  short_path.string() + "\n")),
                        ConfigError);
    }
}

TEST_CASE("efficiency curve files load through the scenario")
{
    const auto curve_path = write_temp("wpt_scenario_eff.csv",
                                       "rf_power_w,efficiency\n"
                                       "0.001,0.2\n"
                                       "0.005,0.5\n");
    const auto scenario = build_scenario(
        parse_text(minimal_config + "efficiency.file = " + curve_path.string() + "\n"));
    CHECK(scenario.efficiency(0.003) == doctest::Approx(0.35).epsilon(1e-12));

    const auto bad_path = write_temp("wpt_scenario_eff_bad.csv", "watts,eta\n0.001,0.2\n");
    CHECK_THROWS_AS(build_scenario(parse_text(minimal_config + "efficiency.file = " +
                                              bad_path.string() + "\n")),
                    ConfigError);

    CHECK_THROWS_AS(build_scenario(parse_text(minimal_config +
                                              "efficiency.file = /no/such/file.csv\n")),
                    ConfigError);
}

TEST_CASE("relative file references resolve against the config directory")
{
    const auto dir = std::filesystem::temp_directory_path();
    write_temp("wpt_rel_mask.txt", std::string("1 1 1 1 1 1 1 1\n") +
                                       "1 1 1 1 1 1 1 1\n1 1 1 1 1 1 1 1\n"
                                       "1 1 1 1 1 1 1 1\n1 1 1 1 1 1 1 1\n"
                                       "1 1 1 1 1 1 1 1\n1 1 1 1 1 1 1 1\n"
                                       "1 1 1 1 1 1 1 1\n");
    const auto cfg_path =
        write_temp("wpt_rel_config.cfg", minimal_config + "mask.file = wpt_rel_mask.txt\n");
    const auto config = ScenarioConfig::load(cfg_path.string());
    REQUIRE(config.mask_file.has_value());
    CHECK(*config.mask_file == (dir / "wpt_rel_mask.txt").string());
    const auto scenario = build_scenario(config);
    CHECK(scenario.options.mask->count() == 64);
}

TEST_CASE("semantic errors surface as config errors")
{
    SUBCASE("bad frequency")
    {
        std::string text = minimal_config;
        const auto pos = text.find("frequency_hz = 5.8e9");
        text.replace(pos, 20, "frequency_hz = 0.0\x20\x20");
        CHECK_THROWS_AS(build_scenario(parse_text(text)), ConfigError);
    }
    SUBCASE("bad probe model")
    {
        CHECK(error_of(minimal_config + "probe.model = fancy\n").find("probe.model") !=
              std::string::npos);
    }
    SUBCASE("receiver below the array plane")
    {
        std::string text = minimal_config;
        const auto pos = text.find("receiver.z_m = 0.5");
        text.replace(pos, 18, "receiver.z_m = -1\x20");
        CHECK_THROWS_AS(build_scenario(parse_text(text)), ConfigError);
    }
}

TEST_CASE("shipped presets build end to end")
{
    SUBCASE("paper_8x8")
    {
        const auto scenario = build_scenario(ScenarioConfig::load(preset_path("paper_8x8.cfg")));
        CHECK(scenario.tx.size() == 64);
        CHECK(scenario.boundary_m == doctest::Approx(3.462).epsilon(1e-3));
        CHECK(scenario.codebook.beam_count() == 256);
        CHECK(scenario.codebook.valid_beam_count() == 172);
        CHECK(scenario.codebook.distance_grid.size() == 35);
        CHECK(scenario.model == ChannelModel::exact);
        CHECK(scenario.pose.range() == doctest::Approx(0.5).epsilon(1e-12));
        // The probe yields real power for the scenario's own pose.
        const auto probe = make_probe(scenario);
        const auto x = optimal_excitation(scenario.ctx, scenario.tx, scenario.pose);
        CHECK(probe(x) > 0.0);
    }
    SUBCASE("fig3_16x16")
    {
        const auto scenario =
            build_scenario(ScenarioConfig::load(preset_path("fig3_16x16.cfg")));
        CHECK(scenario.tx.size() == 256);
        CHECK(scenario.codebook.beam_count() == 1024);
        CHECK(scenario.codebook.valid_beam_count() == 740);
        CHECK(scenario.boundary_m == 13.0);
        CHECK(scenario.codebook.distance_grid.size() == 130);
        CHECK(scenario.codebook.distance(10) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(scenario.pose.range() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(scenario.model == ChannelModel::decomposed);
    }
    SUBCASE("farfield_5m")
    {
        const auto scenario =
            build_scenario(ScenarioConfig::load(preset_path("farfield_5m.cfg")));
        CHECK(scenario.boundary_m == 5.0);
        CHECK(scenario.codebook.distance_grid.size() == 50);
        CHECK(scenario.codebook.distance(50) == doctest::Approx(5.0).epsilon(1e-12));
        CHECK(scenario.pose.anchor_position().z() == 5.0);
    }
}
