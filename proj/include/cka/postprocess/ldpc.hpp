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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cka/bits.hpp"

namespace cka::postprocess {

/// Code rate r = k / N.
struct CodeRate {
    int num = 1;
    int den = 2;

    static CodeRate half() { return {1, 2}; }
    static CodeRate three_fifths() { return {3, 5}; }
    static CodeRate two_thirds() { return {2, 3}; }
    /// Accepts "1/2", "3/5" and "2/3".
    static CodeRate parse(std::string_view text);

    double value() const { return static_cast<double>(num) / den; }
    std::string to_string() const;
    bool operator==(const CodeRate&) const = default;
};

/// Mean column weight of H'. Fractional values interleave floor and ceil
/// weights; 4.75 is three weight-5 columns for every weight-4 column.
inline constexpr double kDefaultColumnWeight = 4.75;
inline constexpr std::uint64_t kDefaultCodeSeed = 0x5eed0c0deULL;

/// H = [H' | S] with a sparse (N - k) x k part H' and an (N - k) x (N - k)
/// staircase S (ones on the diagonal and the first subdiagonal). Only H' is
/// stored; S is implicit.
class ParityCheckMatrix {
public:
    /// Takes H' as one list of message-column indices per parity row.
    ParityCheckMatrix(std::uint32_t n, std::uint32_t k, const std::vector<std::vector<std::uint32_t>>& rows);

    std::uint32_t n() const { return n_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t num_checks() const { return n_ - k_; }
    std::size_t num_edges() const { return row_cols_.size(); }

    /// Message columns of H' in parity row i.
    std::span<const std::uint32_t> row(std::uint32_t i) const;
    /// Parity rows in which message column j participates.
    std::span<const std::uint32_t> column(std::uint32_t j) const;
    /// Edge ids of column j, indexing into the row-major edge order.
    std::span<const std::uint32_t> column_edges(std::uint32_t j) const;
    std::uint32_t row_begin(std::uint32_t i) const { return row_ptr_[i]; }

    /// Column indices (in [0, N)) of the ones in row i of [H' | S].
    std::vector<std::uint32_t> full_row(std::uint32_t i) const;

    /// True when no two columns of [H' | S] share two rows.
    bool is_four_cycle_free() const;

    bool operator==(const ParityCheckMatrix& other) const = default;

private:
    std::uint32_t n_;
    std::uint32_t k_;
    std::vector<std::uint32_t> row_ptr_;
    std::vector<std::uint32_t> row_cols_;
    std::vector<std::uint32_t> col_ptr_;
    std::vector<std::uint32_t> col_rows_;
    std::vector<std::uint32_t> col_edges_;
};

/// Seeded construction with fixed column weight in H', near-uniform row
/// weights and 4-cycle rejection (including cycles through S). N must be
/// 16200 or 64800 unless `allow_any_length` is set (used by tests).
ParityCheckMatrix build_code(std::uint32_t n, CodeRate rate, std::uint64_t seed,
                             double column_weight = kDefaultColumnWeight, bool allow_any_length = false);

/// Sparse coordinate text: first line `N k`, then one line per parity row
/// with the 0-based column indices of its ones in [H' | S].
void write_matrix(std::ostream& out, const ParityCheckMatrix& h);
/// Rejects matrices whose parity part is not the staircase.
ParityCheckMatrix read_matrix(std::istream& in);

/// Parity bits p with H' m + S p = 0, by forward substitution.
BitVec encode_syndrome(const BitVec& block, const ParityCheckMatrix& h);

struct DecodeResult {
    BitVec corrected;
    bool converged = false;
    int iterations = 0;
};

inline constexpr int kDefaultMaxIterations = 60;
inline constexpr double kMinCrossover = 1e-4;
inline constexpr double kMaxCrossover = 0.499;

/// Sum-product decoding of the message given Alice's parity bits, which are
/// trusted exactly. The crossover probability sets the channel prior and is
/// clamped to [kMinCrossover, kMaxCrossover]. converged is true iff
/// encode_syndrome(corrected) == alice_parity.
DecodeResult decode_bp(const BitVec& noisy_block, const BitVec& alice_parity, const ParityCheckMatrix& h,
                       double crossover, int max_iters = kDefaultMaxIterations);

/// Same, with an explicit log-likelihood ratio log(P(0)/P(1)) per message bit.
DecodeResult decode_bp_llr(std::span<const double> llr, const BitVec& alice_parity, const ParityCheckMatrix& h,
                           int max_iters = kDefaultMaxIterations);

}  // namespace cka::postprocess
