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

#include "cka/cli/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cka/error.hpp"

namespace cka::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
        throw ConfigurationError("'" + key + "' expects a number, got '" + value + "'");
    }
    return v;
}

template <typename T>
T to_integer(const std::string& key, const std::string& value) {
    T v{};
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigurationError("'" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    return v;
}

}  // namespace

void RunConfig::validate() const {
    protocol.validate();
    if (!(noise.visibility >= 0.0 && noise.visibility <= 1.0)) throw ConfigurationError("visibility must lie in [0, 1]");
    if (block_n != 16200 && block_n != 64800) throw ConfigurationError("block_n must be 16200 or 64800");
    if (max_iters < 1) throw ConfigurationError("max_iters must be at least 1");
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigurationError("eps must lie in (0, 1)");
}

void set_field(RunConfig& c, const std::string& key, const std::string& value) {
    try {
        if (key == "configuration") {
            c.protocol.config = protocol::parse_configuration(value);
        } else if (key == "p") {
            c.protocol.p = to_double(key, value);
        } else if (key == "rounds") {
            c.protocol.total_rounds = to_integer<std::uint64_t>(key, value);
        } else if (key == "scheduling") {
            c.protocol.scheduling = protocol::parse_scheduling(value);
        } else if (key == "run_length") {
            c.protocol.run_length = to_integer<std::uint64_t>(key, value);
        } else if (key == "seed") {
            c.protocol.seed = to_integer<std::uint64_t>(key, value);
        } else if (key == "noise") {
            if (value == "ideal") {
                c.noise.kind = quantum::NoiseKind::ideal;
            } else if (value == "white") {
                c.noise.kind = quantum::NoiseKind::global_white_noise;
            } else {
                throw ConfigurationError("noise must be 'ideal' or 'white'");
            }
        } else if (key == "visibility") {
            c.noise.visibility = to_double(key, value);
        } else if (key == "block_n") {
            c.block_n = to_integer<std::uint32_t>(key, value);
        } else if (key == "rate") {
            c.rate = postprocess::CodeRate::parse(value);
        } else if (key == "max_iters") {
            c.max_iters = to_integer<int>(key, value);
        } else if (key == "column_weight") {
            c.column_weight = to_double(key, value);
        } else if (key == "code_seed") {
            c.code_seed = to_integer<std::uint64_t>(key, value);
        } else if (key == "eps") {
            c.eps = to_double(key, value);
        } else if (key == "out") {
            c.out_dir = value;
        } else {
            throw ConfigurationError("unknown configuration key '" + key + "'");
        }
    } catch (const ConfigurationError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigurationError(e.what());
    }
}

std::string serialize(const RunConfig& c) {
    std::ostringstream os;
    os << "configuration = " << protocol::to_string(c.protocol.config) << '\n';
    os << "p = " << format_double(c.protocol.p) << '\n';
    os << "rounds = " << c.protocol.total_rounds << '\n';
    os << "scheduling = " << protocol::to_string(c.protocol.scheduling) << '\n';
    os << "run_length = " << c.protocol.run_length << '\n';
    os << "seed = " << c.protocol.seed << '\n';
    os << "noise = " << (c.noise.kind == quantum::NoiseKind::ideal ? "ideal" : "white") << '\n';
    os << "visibility = " << format_double(c.noise.visibility) << '\n';
    os << "block_n = " << c.block_n << '\n';
    os << "rate = " << c.rate.to_string() << '\n';
    os << "max_iters = " << c.max_iters << '\n';
    os << "column_weight = " << format_double(c.column_weight) << '\n';
    os << "code_seed = " << c.code_seed << '\n';
    os << "eps = " << format_double(c.eps) << '\n';
    os << "out = " << c.out_dir << '\n';
    return os.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigurationError("line " + std::to_string(lineno) + ": expected `key = value`");
        }
        set_field(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

}  // namespace cka::cli
