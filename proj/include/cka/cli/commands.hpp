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

#include <iosfwd>

#include "cka/cli/run_config.hpp"
#include "cka/io/pbm.hpp"
#include "cka/protocol/session.hpp"

namespace cka::cli {

struct DemoReport {
    protocol::ErrorEstimate estimate;
    std::size_t key_bits = 0;
    std::size_t image_bits = 0;
    double crossover = 0.0;
    double residual_b = 0.0;
    double residual_c = 0.0;
    std::size_t failed_blocks_b = 0;
    std::size_t failed_blocks_c = 0;
    std::uint64_t leakage_bits = 0;
    /// Percent of wrongly decrypted pixels.
    double pixel_error_raw_b = 0.0;
    double pixel_error_raw_c = 0.0;
    double pixel_error_cor_b = 0.0;
    double pixel_error_cor_c = 0.0;
    double akr = 0.0;

    io::BinaryImage encrypted;
    io::BinaryImage decrypted_raw_b, decrypted_raw_c;
    io::BinaryImage decrypted_cor_b, decrypted_cor_c;
};

/// Simulates the protocol, estimates the error rates, reconciles Bob's and
/// Charlie's keys against Alice's, encrypts the image with Alice's key and
/// decrypts it with the raw and corrected keys. Throws SizeError when the
/// simulation yields fewer key bits than the image has pixels.
DemoReport demo_pipeline(const RunConfig& config, const io::BinaryImage& image);

/// Entry point of the command-line tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cka::cli
