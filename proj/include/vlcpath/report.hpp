// SPDX-License-Identifier: Apache-2.0
//
// vlcpath - visible light path loss modelling for vehicular links
// Copyright (C) 2026 The vlcpath Authors
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

#include "vlcpath/fitting.hpp"
#include "vlcpath/simulator.hpp"
#include "vlcpath/trace.hpp"

#include <filesystem>
#include <json.hpp>
#include <string>

namespace vlcpath
{

using json = nlohmann::ordered_json;

json to_json(const FitConfig &config);
json to_json(const FitReport &report);
json to_json(const TransformSummary &summary);
json to_json(const FitEvaluation &evaluation, bool include_residuals);
json to_json(const ChannelParams &params);

// Throws Error("malformed fit report: ...") on missing or mistyped fields.
FitReport fit_report_from_json(const json &doc);
FitReport load_fit_report(const std::filesystem::path &path);

// Config echo, generator name, seed and the noiseless peak reference.
json simulation_sidecar(const ScenarioConfig &config, const SimulatedPassby &sim);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path &path);

void write_json(const std::filesystem::path &path, const json &doc);

} // namespace vlcpath
