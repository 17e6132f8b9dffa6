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

#pragma once

#include "wpt/io.hpp"
#include "wpt/scanner.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace wpt
{

// Parsed, boundary-level description of a power-transfer scenario.
// Angles are in degrees here; everything downstream works in radians.
// The schema is 'key = value' lines with '#' comments:
//
//   frequency_hz            carrier frequency               (required)
//   tx.rows, tx.cols        transmit grid size              (required)
//   tx.row_spacing_m        spacing along y                 (required)
//   tx.col_spacing_m        spacing along x                 (required)
//   tx.element_gain         per-element gain                (default 1)
//   tx.element_power_w      per-element feed power          (required)
//   tx.element_extent_x_m   physical element width          (optional)
//   tx.element_extent_y_m   physical element height         (optional)
//   tx.aperture_x_m         total aperture width; converted (optional)
//   tx.aperture_y_m         total aperture height           (optional)
//   tx.aperture_diagonal_m  max linear dimension override   (optional)
//   rx.rows, rx.cols, rx.row_spacing_m, rx.col_spacing_m    (required)
//   rx.element_gain                                          (default 1)
//   receiver.x_m/y_m/z_m    cartesian pose                  (one form)
//   receiver.r_m/theta_deg/phi_deg  spherical pose          (one form)
//   receiver.alpha_deg/beta_deg/gamma_deg  attitude         (default 0)
//   codebook.delta_u/delta_v  scan span                     (default 2)
//   codebook.upsilon_d        distance grid size            (required)
//   codebook.r_b_m            boundary override             (optional)
//   probe.model               exact | decomposed            (default exact)
//   quantize.lsb_deg          phase shifter step            (optional)
//   mask.file                 element on/off file           (optional)
//   efficiency.file           rectifier curve CSV           (optional)
//   efficiency.constant       flat rectifier efficiency     (default 0.5)
//
// Relative mask/efficiency paths resolve against the config location.
struct ScenarioConfig
{
    double frequency_hz = 0;

    ArraySpec<double> tx;
    std::optional<double> tx_aperture_x_m;
    std::optional<double> tx_aperture_y_m;
    std::optional<double> tx_aperture_diagonal_m;

    ArraySpec<double> rx;

    std::optional<Vec3<double>> receiver_xyz_m;
    std::optional<Vec3<double>> receiver_spherical; // (r_m, theta_deg, phi_deg)
    double receiver_alpha_deg = 0;
    double receiver_beta_deg = 0;
    double receiver_gamma_deg = 0;

    double delta_u = 2;
    double delta_v = 2;
    Eigen::Index upsilon_d = 0;
    std::optional<double> r_b_m;

    ChannelModel model = ChannelModel::exact;
    std::optional<double> quantize_lsb_deg;
    std::optional<std::string> mask_file;
    std::optional<std::string> efficiency_file;
    std::optional<double> efficiency_constant;

    // Reads and schema-checks a config file. Collects all missing
    // required keys into a single ConfigError; unknown keys and bad
    // values are reported with their line numbers.
    static ScenarioConfig load(const std::string& path);

    // Same, from a stream; source_name labels errors and base_dir
    // anchors relative file references.
    static ScenarioConfig parse(std::istream& input, const std::string& source_name,
                                const std::string& base_dir);
};

// Fully constructed simulation state, radians and SI units throughout.
struct Scenario
{
    PropagationContext<double> ctx;
    ArrayGeometry<double> tx;
    ArrayGeometry<double> rx_local; // anchored at the origin
    ReceiverPose<double> pose{Vec3<double>(0, 0, 1), EulerAngles<double>{}};
    Codebook<double> codebook;
    ChannelModel model = ChannelModel::exact;
    ScanOptions<double> options;
    EfficiencyModel<double> efficiency = EfficiencyModel<double>::constant(0.5);
    double boundary_m = 0; // radiating near-field boundary used by the codebook
};

// Validates the config and builds geometry, codebook, and probe
// conditioning. Throws ConfigError for semantic problems.
Scenario build_scenario(const ScenarioConfig& config);

// Power probe for the scenario's own receiver pose.
PowerProbe<double> make_probe(const Scenario& scenario);

// Power probe for an alternative pose (sweep support).
PowerProbe<double> make_probe(const Scenario& scenario, const ReceiverPose<double>& pose);

} // namespace wpt
