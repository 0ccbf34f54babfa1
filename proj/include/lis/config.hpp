// SPDX-License-Identifier: Apache-2.0
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

#include "lis/harness.hpp"

#include <json.hpp>

#include <string>

namespace lis
{
    /// Every key is optional; unknown keys and wrong types raise ConfigError with the key path.
    ScenarioConfig config_from_json(const nlohmann::json &j);

    /// Full config with every field present, so that config_from_json(config_to_json(c)) == c.
    nlohmann::json config_to_json(const ScenarioConfig &config);

    /// Reads and parses a JSON file; unreadable files and syntax errors raise ConfigError.
    ScenarioConfig load_config(const std::string &path);
}
