// SPDX-License-Identifier: Apache-2.0
//
// risisac - secure full-duplex RIS-assisted ISAC simulation and optimization
// Copyright (C) 2026 The risisac authors
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

#include "risisac/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <set>
#include <string>

namespace risisac::detail
{

// Overlays the keys present in `node` onto `cfg`. `prefix` is used in error messages.
void apply_scenario_node(const YAML::Node &node, ScenarioConfig &cfg, const std::string &prefix = "");

void emit_scenario(YAML::Emitter &out, const ScenarioConfig &cfg);

void check_keys(const YAML::Node &node, const std::set<std::string> &allowed, const std::string &prefix);

double read_double(const YAML::Node &node, const std::string &key);
std::string format_double(double v);

} // namespace risisac::detail
