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

#include <cstdint>
#include <vector>

#include "cka/bits.hpp"
#include "cka/postprocess/ldpc.hpp"

namespace cka::postprocess {

struct ReconcileResult {
    BitVec corrected;
    /// Fraction of bits of `corrected` that differ from Alice's key.
    double residual_error_rate = 0.0;
    double raw_error_rate = 0.0;
    /// Parity bits disclosed over the public channel, blocks * (N - k).
    std::uint64_t leakage_bits = 0;
    std::size_t blocks = 0;
    std::size_t failed_blocks = 0;
};

/// Number of k-bit blocks needed for a key; the last one is zero padded.
std::size_t block_count(std::size_t key_bits, const ParityCheckMatrix& h);

/// Alice's side: concatenated parity bits of every (padded) block.
BitVec compute_parities(const BitVec& key_a, const ParityCheckMatrix& h);

/// Bob's side: decodes each block of his key against Alice's parities.
/// Padding positions are known zeros. Blocks that fail keep the decoder's
/// best estimate. `failed_blocks`, if given, receives the failure count.
BitVec correct_key(const BitVec& key_b, const BitVec& parities, const ParityCheckMatrix& h, double crossover,
                   int max_iters = kDefaultMaxIterations, std::size_t* failed_blocks = nullptr);

ReconcileResult reconcile_keys(const BitVec& key_a, const BitVec& key_b, const ParityCheckMatrix& h,
                               double crossover, int max_iters = kDefaultMaxIterations);

/// Builds the code from (N, r) with the default seed and weight.
ReconcileResult reconcile_keys(const BitVec& key_a, const BitVec& key_b, CodeRate rate, std::uint32_t n,
                               double crossover);

/// Seeded Toeplitz hash of `key` down to output_length bits.
BitVec privacy_amplify(const BitVec& key, std::size_t output_length, std::uint64_t seed);

/// The n + m - 1 bits defining the Toeplitz matrix for (|key| = n, m).
/// Entry (i, j) of the matrix is bit (i - j + n - 1).
BitVec toeplitz_diagonals(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace cka::postprocess
