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

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

namespace wpt
{

namespace
{

constexpr double deg = std::numbers::pi / 180.0;

std::string trimmed(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

// One raw 'key = value' binding with its source line.
struct Entry
{
    std::string value;
    int line = 0;
    bool used = false;
};

// Accumulates schema problems so a bad config reports everything at
// once instead of failing on the first key.
class SchemaReader
{
  public:
    SchemaReader(std::istream& input, const std::string& source_name) : source_(source_name)
    {
        std::string line;
        int line_no = 0;
        while (std::getline(input, line))
        {
            ++line_no;
            const auto hash = line.find('#');
            const std::string body = trimmed(hash == std::string::npos ? line : line.substr(0, hash));
            if (body.empty())
                continue;
            const auto eq = body.find('=');
            if (eq == std::string::npos)
            {
                error(line_no, "expected 'key = value'");
                continue;
            }
            const std::string key = trimmed(body.substr(0, eq));
            const std::string value = trimmed(body.substr(eq + 1));
            if (key.empty() || value.empty())
            {
                error(line_no, "expected 'key = value'");
                continue;
            }
            const auto [it, inserted] = entries_.emplace(key, Entry{value, line_no});
            if (!inserted)
                error(line_no, "duplicate key '" + key + "' (first set on line " +
                                   std::to_string(it->second.line) + ")");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::optional<std::string> take_string(const std::string& key)
    {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    std::optional<double> take_double(const std::string& key)
    {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return std::nullopt;
        it->second.used = true;
        double value = 0;
        const std::string& text = it->second.value;
        const char* begin = text.data();
        const char* end = begin + text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end)
        {
            error(it->second.line, "'" + key + "' expects a number, got '" + text + "'");
            return std::nullopt;
        }
        return value;
    }

    std::optional<Eigen::Index> take_index(const std::string& key)
    {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return std::nullopt;
        long long value = 0;
        const std::string& text = it->second.value;
        const char* begin = text.data();
        const char* end = begin + text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end)
        {
            it->second.used = true;
            error(it->second.line, "'" + key + "' expects an integer, got '" + text + "'");
            return std::nullopt;
        }
        it->second.used = true;
        return static_cast<Eigen::Index>(value);
    }

    double require_double(const std::string& key)
    {
        if (const auto value = take_double(key))
            return *value;
        if (!has(key))
            missing_.push_back(key);
        return 0;
    }

    Eigen::Index require_index(const std::string& key)
    {
        if (const auto value = take_index(key))
            return *value;
        if (!has(key))
            missing_.push_back(key);
        return 0;
    }

    void error(int line, const std::string& message)
    {
        errors_.push_back(source_ + ":" + std::to_string(line) + ": " + message);
    }

    void error(const std::string& message) { errors_.push_back(source_ + ": " + message); }

    void missing(const std::string& what) { missing_.push_back(what); }

    // Throws a single ConfigError covering unknown keys, missing
    // required keys, and every recorded problem.
    void finish()
    {
        for (const auto& [key, entry] : entries_)
            if (!entry.used)
                error(entry.line, "unknown key '" + key + "'");
        if (!missing_.empty())
        {
            std::string list;
            for (const auto& key : missing_)
                list += (list.empty() ? "" : ", ") + key;
            error("missing required keys: " + list);
        }
        if (errors_.empty())
            return;
        std::string all;
        for (const auto& message : errors_)
            all += (all.empty() ? "" : "\n") + message;
        throw ConfigError(all);
    }

  private:
    std::string source_;
    std::map<std::string, Entry> entries_;
    std::vector<std::string> errors_;
    std::vector<std::string> missing_;
};

std::string resolve_path(const std::string& value, const std::string& base_dir)
{
    const std::filesystem::path p(value);
    if (p.is_absolute() || base_dir.empty())
        return value;
    return (std::filesystem::path(base_dir) / p).string();
}

void read_array(SchemaReader& reader, const std::string& prefix, ArraySpec<double>& spec)
{
    spec.n_rows = reader.require_index(prefix + ".rows");
    spec.n_cols = reader.require_index(prefix + ".cols");
    spec.row_spacing = reader.require_double(prefix + ".row_spacing_m");
    spec.col_spacing = reader.require_double(prefix + ".col_spacing_m");
    if (const auto gain = reader.take_double(prefix + ".element_gain"))
        spec.element_gain = *gain;
    if (const auto x = reader.take_double(prefix + ".element_extent_x_m"))
        spec.element_extent_x = *x;
    if (const auto y = reader.take_double(prefix + ".element_extent_y_m"))
        spec.element_extent_y = *y;
}

} // namespace

ScenarioConfig ScenarioConfig::load(const std::string& path)
{
    std::ifstream file(path);
    if (!file)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse(file, path, std::filesystem::path(path).parent_path().string());
}

ScenarioConfig ScenarioConfig::parse(std::istream& input, const std::string& source_name,
                                     const std::string& base_dir)
{
    SchemaReader reader(input, source_name);
    ScenarioConfig config;

    config.frequency_hz = reader.require_double("frequency_hz");

    read_array(reader, "tx", config.tx);
    config.tx.per_element_power = reader.require_double("tx.element_power_w");
    config.tx_aperture_x_m = reader.take_double("tx.aperture_x_m");
    config.tx_aperture_y_m = reader.take_double("tx.aperture_y_m");
    config.tx_aperture_diagonal_m = reader.take_double("tx.aperture_diagonal_m");
    if (config.tx_aperture_x_m.has_value() != config.tx_aperture_y_m.has_value())
        reader.error("tx.aperture_x_m and tx.aperture_y_m must be given together");
    if (config.tx_aperture_x_m &&
        (config.tx.element_extent_x || config.tx.element_extent_y))
        reader.error("give tx element extents or tx aperture dimensions, not both");

    read_array(reader, "rx", config.rx);

    const bool has_xyz = reader.has("receiver.x_m") || reader.has("receiver.y_m") ||
                         reader.has("receiver.z_m");
    const bool has_sph = reader.has("receiver.r_m") || reader.has("receiver.theta_deg") ||
                         reader.has("receiver.phi_deg");
    if (has_xyz && has_sph)
        reader.error("receiver pose given in both cartesian and spherical form");
    if (!has_xyz && !has_sph)
        reader.missing("receiver.x_m/y_m/z_m or receiver.r_m/theta_deg/phi_deg");
    if (has_xyz)
    {
        Vec3<double> p;
        p.x() = reader.require_double("receiver.x_m");
        p.y() = reader.require_double("receiver.y_m");
        p.z() = reader.require_double("receiver.z_m");
        config.receiver_xyz_m = p;
    }
    if (has_sph)
    {
        Vec3<double> p;
        p.x() = reader.require_double("receiver.r_m");
        p.y() = reader.require_double("receiver.theta_deg");
        p.z() = reader.require_double("receiver.phi_deg");
        config.receiver_spherical = p;
    }
    if (const auto a = reader.take_double("receiver.alpha_deg"))
        config.receiver_alpha_deg = *a;
    if (const auto b = reader.take_double("receiver.beta_deg"))
        config.receiver_beta_deg = *b;
    if (const auto c = reader.take_double("receiver.gamma_deg"))
        config.receiver_gamma_deg = *c;

    if (const auto du = reader.take_double("codebook.delta_u"))
        config.delta_u = *du;
    if (const auto dv = reader.take_double("codebook.delta_v"))
        config.delta_v = *dv;
    config.upsilon_d = reader.require_index("codebook.upsilon_d");
    config.r_b_m = reader.take_double("codebook.r_b_m");

    if (const auto model = reader.take_string("probe.model"))
    {
        if (*model == "exact")
            config.model = ChannelModel::exact;
        else if (*model == "decomposed")
            config.model = ChannelModel::decomposed;
        else
            reader.error("probe.model must be 'exact' or 'decomposed', got '" + *model + "'");
    }

    config.quantize_lsb_deg = reader.take_double("quantize.lsb_deg");
    if (const auto mask = reader.take_string("mask.file"))
        config.mask_file = resolve_path(*mask, base_dir);
    if (const auto curve = reader.take_string("efficiency.file"))
        config.efficiency_file = resolve_path(*curve, base_dir);
    config.efficiency_constant = reader.take_double("efficiency.constant");
    if (config.efficiency_file && config.efficiency_constant)
        reader.error("efficiency.file and efficiency.constant are mutually exclusive");

    reader.finish();
    return config;
}

Scenario build_scenario(const ScenarioConfig& config)
{
    Scenario scenario;
    try
    {
        scenario.ctx = PropagationContext<double>::from_frequency(
            config.frequency_hz, config.tx.element_gain, config.rx.element_gain);

        ArraySpec<double> tx_spec = config.tx;
        if (config.tx_aperture_x_m)
        {
            const double span_x =
                static_cast<double>(tx_spec.n_cols - 1) * tx_spec.col_spacing;
            const double span_y =
                static_cast<double>(tx_spec.n_rows - 1) * tx_spec.row_spacing;
            const double extent_x = *config.tx_aperture_x_m - span_x;
            const double extent_y = *config.tx_aperture_y_m - span_y;
            if (extent_x <= 0 || extent_y <= 0)
                throw ConfigError("tx aperture dimensions are smaller than the element grid span");
            tx_spec.element_extent_x = extent_x;
            tx_spec.element_extent_y = extent_y;
        }
        scenario.tx = build_planar_array(tx_spec);
        scenario.rx_local = recenter_on_anchor(build_planar_array(config.rx));

        const EulerAngles<double> attitude(config.receiver_alpha_deg * deg,
                                           config.receiver_beta_deg * deg,
                                           config.receiver_gamma_deg * deg);
        if (config.receiver_xyz_m)
            scenario.pose = ReceiverPose<double>(*config.receiver_xyz_m, attitude);
        else
            scenario.pose = ReceiverPose<double>::from_spherical(
                config.receiver_spherical->x(), config.receiver_spherical->y() * deg,
                config.receiver_spherical->z() * deg, attitude);

        if (config.r_b_m)
            scenario.boundary_m = *config.r_b_m;
        else if (config.tx_aperture_diagonal_m)
            scenario.boundary_m = fraunhofer_distance(scenario.ctx, *config.tx_aperture_diagonal_m);
        else
            scenario.boundary_m = fraunhofer_distance(scenario.ctx, scenario.tx);
        if (scenario.boundary_m <= 0)
            throw ConfigError("near-field boundary is zero; set codebook.r_b_m or aperture "
                              "dimensions for the transmit array");

        scenario.codebook = generate_codebook(tx_spec, config.delta_u, config.delta_v,
                                              scenario.boundary_m, config.upsilon_d);

        scenario.model = config.model;
        if (config.quantize_lsb_deg)
        {
            const double lsb = *config.quantize_lsb_deg * deg;
            // Surfaces bad step sizes at load time instead of mid-scan.
            quantize_phases(excitation_from_phases(1.0, VecX<double>::Zero(1).eval()), lsb);
            scenario.options.quantize_lsb = lsb;
        }
        if (config.mask_file)
        {
            MaskArray mask = io::load_mask(*config.mask_file, scenario.tx.size());
            if (!mask.any())
                throw ConfigError("mask file disables every transmit element");
            scenario.options.mask = std::move(mask);
        }

        if (config.efficiency_file)
            scenario.efficiency = io::load_efficiency_csv(*config.efficiency_file);
        else
            scenario.efficiency =
                EfficiencyModel<double>::constant(config.efficiency_constant.value_or(0.5));
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(e.what());
    }
    return scenario;
}

PowerProbe<double> make_probe(const Scenario& scenario)
{
    return make_probe(scenario, scenario.pose);
}

PowerProbe<double> make_probe(const Scenario& scenario, const ReceiverPose<double>& pose)
{
    return simulated_probe(scenario.ctx, scenario.tx, pose, scenario.rx_local, scenario.model);
}

} // namespace wpt
