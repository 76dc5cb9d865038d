// Copyright 2026 The cka Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cka/postprocess/ldpc.hpp"
#include "cka/protocol/session.hpp"
#include "cka/quantum/state.hpp"

namespace cka::cli {

/// Everything one experiment needs. The text form is `key = value` per line
/// with '#' comments; unknown keys are rejected.
struct RunConfig {
    protocol::ProtocolParams protocol;
    quantum::NoiseModel noise;
    std::uint32_t block_n = 16200;
    postprocess::CodeRate rate = postprocess::CodeRate::half();
    int max_iters = postprocess::kDefaultMaxIterations;
    double column_weight = postprocess::kDefaultColumnWeight;
    std::uint64_t code_seed = postprocess::kDefaultCodeSeed;
    double eps = 1e-5;
    std::string out_dir = "out";

    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

std::string serialize(const RunConfig& config);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Applies one `key = value` assignment; used by the parser and by CLI
/// flag overrides.
void set_field(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace cka::cli
