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

#include "wpt/rectenna.hpp"
#include "wpt/types.hpp"

#include <stdexcept>
#include <string>

namespace wpt
{

// Raised for malformed configuration or data files. The CLI maps this
// class of failure to its own exit code, distinct from runtime errors.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

namespace io
{

// Locale-independent float formatting with 9 significant digits,
// '.' decimal separator. All CSV output goes through here so files
// are byte-reproducible across runs and environments.
std::string format_number(double value);

// Power in dBm for a power in watts (watts > 0).
double watts_to_dbm(double watts);

// Loads a piecewise-linear efficiency curve from a CSV file with
// header "rf_power_w,efficiency". Throws ConfigError with the file
// name and line number on malformed input.
EfficiencyModel<double> load_efficiency_csv(const std::string& path);

// Loads an element on/off mask: one 0 or 1 token per element, in
// element order, whitespace separated, '#' comments allowed. The
// token count must equal expected_size.
MaskArray load_mask(const std::string& path, Eigen::Index expected_size);

// Writes contents verbatim (binary mode, '\n' endings preserved).
void write_file(const std::string& path, const std::string& contents);

} // namespace io

} // namespace wpt
