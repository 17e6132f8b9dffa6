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

namespace wpt::cli
{

// Parses arguments, dispatches the subcommand, and maps failures to
// exit codes: 0 success, 2 configuration or usage error, 3 runtime
// error. Subcommands: scan, phase-map, sweep, export-codebook.
int run(int argc, char** argv);

} // namespace wpt::cli
