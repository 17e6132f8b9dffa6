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

#include "wpt/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace wpt::io
{

namespace
{

std::string trimmed(const std::string& line)
{
    const auto hash = line.find('#');
    std::string s = hash == std::string::npos ? line : line.substr(0, hash);
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token, const std::string& where)
{
    double value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(where + ": expected a number, got '" + token + "'");
    return value;
}

} // namespace

std::string format_number(double value)
{
    char buffer[40];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 9);
    if (ec != std::errc())
        throw std::runtime_error("number formatting failed");
    return std::string(buffer, ptr);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts) + 30.0;
}

EfficiencyModel<double> load_efficiency_csv(const std::string& path)
{
    std::ifstream file(path);
    if (!file)
        throw ConfigError("cannot open efficiency file '" + path + "'");

    std::vector<std::pair<double, double>> points;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(file, line))
    {
        ++line_no;
        const std::string body = trimmed(line);
        if (body.empty())
            continue;
        const std::string where = path + ":" + std::to_string(line_no);
        if (!header_seen)
        {
            std::string compact;
            for (char c : body)
                if (c != ' ' && c != '\t')
                    compact += c;
            if (compact != "rf_power_w,efficiency")
                throw ConfigError(where + ": expected header 'rf_power_w,efficiency'");
            header_seen = true;
            continue;
        }
        const auto comma = body.find(',');
        if (comma == std::string::npos)
            throw ConfigError(where + ": expected 'rf_power_w,efficiency' row");
        const double power = parse_double(trimmed(body.substr(0, comma)), where);
        const double eff = parse_double(trimmed(body.substr(comma + 1)), where);
        points.emplace_back(power, eff);
    }
    if (!header_seen)
        throw ConfigError(path + ": empty efficiency file");
    if (points.empty())
        throw ConfigError(path + ": efficiency file has no data rows");
    try
    {
        return EfficiencyModel<double>::piecewise(points);
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

MaskArray load_mask(const std::string& path, Eigen::Index expected_size)
{
    std::ifstream file(path);
    if (!file)
        throw ConfigError("cannot open mask file '" + path + "'");

    std::vector<bool> bits;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line))
    {
        ++line_no;
        std::istringstream tokens(trimmed(line));
        std::string token;
        while (tokens >> token)
        {
            if (token == "0")
                bits.push_back(false);
            else if (token == "1")
                bits.push_back(true);
            else
                throw ConfigError(path + ":" + std::to_string(line_no) +
                                  ": mask entries must be 0 or 1, got '" + token + "'");
        }
    }
    if (static_cast<Eigen::Index>(bits.size()) != expected_size)
        throw ConfigError(path + ": mask has " + std::to_string(bits.size()) +
                          " entries, expected " + std::to_string(expected_size));

    MaskArray mask(expected_size);
    for (Eigen::Index n = 0; n < expected_size; ++n)
        mask(n) = bits[static_cast<std::size_t>(n)];
    return mask;
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!file)
        throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace wpt::io
