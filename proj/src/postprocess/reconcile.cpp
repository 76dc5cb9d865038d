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

#include "cka/postprocess/reconcile.hpp"

#include <algorithm>
#include <cmath>

#include "cka/error.hpp"
#include "cka/random.hpp"
#include "cka/simd/kernels.hpp"

namespace cka::postprocess {

namespace {

constexpr double kKnownBitLlr = 60.0;

BitVec padded_block(const BitVec& key, std::size_t index, std::uint32_t k) {
    const std::size_t begin = index * k;
    const std::size_t len = std::min<std::size_t>(k, key.size() - begin);
    BitVec block = key.slice(begin, len);
    block.resize(k);
    return block;
}

}  // namespace

std::size_t block_count(std::size_t key_bits, const ParityCheckMatrix& h) { return (key_bits + h.k() - 1) / h.k(); }

BitVec compute_parities(const BitVec& key_a, const ParityCheckMatrix& h) {
    BitVec out;
    for (std::size_t b = 0; b < block_count(key_a.size(), h); ++b) out.append(encode_syndrome(padded_block(key_a, b, h.k()), h));
    return out;
}

BitVec correct_key(const BitVec& key_b, const BitVec& parities, const ParityCheckMatrix& h, double crossover,
                   int max_iters, std::size_t* failed_blocks) {
    const std::size_t blocks = block_count(key_b.size(), h);
    if (parities.size() != blocks * h.num_checks()) throw ContractError("parity stream length does not match the key");
    const double q = std::clamp(crossover, kMinCrossover, kMaxCrossover);
    const double magnitude = std::log((1.0 - q) / q);

    BitVec corrected;
    std::size_t failures = 0;
    std::vector<double> llr(h.k());
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t begin = b * h.k();
        const std::size_t real = std::min<std::size_t>(h.k(), key_b.size() - begin);
        for (std::size_t j = 0; j < h.k(); ++j) {
            llr[j] = j < real ? (key_b[begin + j] ? -magnitude : magnitude) : kKnownBitLlr;
        }
        const auto res =
            decode_bp_llr(llr, parities.slice(b * h.num_checks(), h.num_checks()), h, max_iters);
        if (!res.converged) ++failures;
        corrected.append(res.corrected.slice(0, real));
    }
    if (failed_blocks) *failed_blocks = failures;
    return corrected;
}

ReconcileResult reconcile_keys(const BitVec& key_a, const BitVec& key_b, const ParityCheckMatrix& h,
                               double crossover, int max_iters) {
    if (key_a.size() != key_b.size()) throw ContractError("keys to reconcile differ in length");
    if (key_a.empty()) throw ContractError("cannot reconcile empty keys");
    ReconcileResult r;
    r.blocks = block_count(key_a.size(), h);
    r.leakage_bits = static_cast<std::uint64_t>(r.blocks) * h.num_checks();
    r.corrected = correct_key(key_b, compute_parities(key_a, h), h, crossover, max_iters, &r.failed_blocks);
    const auto n = static_cast<double>(key_a.size());
    r.raw_error_rate = static_cast<double>(hamming_distance(key_a, key_b)) / n;
    r.residual_error_rate = static_cast<double>(hamming_distance(key_a, r.corrected)) / n;
    return r;
}

ReconcileResult reconcile_keys(const BitVec& key_a, const BitVec& key_b, CodeRate rate, std::uint32_t n,
                               double crossover) {
    return reconcile_keys(key_a, key_b, build_code(n, rate, kDefaultCodeSeed), crossover);
}

BitVec toeplitz_diagonals(std::size_t n, std::size_t m, std::uint64_t seed) {
    const std::size_t len = n + m == 0 ? 0 : n + m - 1;
    BitVec out(len);
    Rng rng(seed);
    for (auto& w : out.words()) w = rng();
    out.resize(len);  // clears bits past the end
    return out;
}

BitVec privacy_amplify(const BitVec& key, std::size_t output_length, std::uint64_t seed) {
    const std::size_t n = key.size();
    const std::size_t m = output_length;
    if (m > n) throw ContractError("privacy amplification cannot lengthen the key");
    BitVec out(m);
    if (m == 0) return out;

    // Row i of the matrix read left to right is the reversed diagonal
    // sequence starting at offset m - 1 - i.
    const BitVec diag = toeplitz_diagonals(n, m, seed);
    BitVec reversed(diag.size());
    for (std::size_t x = 0; x < diag.size(); ++x) reversed.set(x, diag[diag.size() - 1 - x]);

    // One copy per sub-word shift, so every row is a word-aligned window.
    const std::size_t key_words = key.words().size();
    std::vector<BitVec> shifted;
    shifted.reserve(64);
    for (std::size_t s = 0; s < 64 && s < reversed.size(); ++s) {
        BitVec copy = reversed.slice(s, reversed.size() - s);
        copy.resize(copy.size() + 64 * (key_words + 1));
        shifted.push_back(std::move(copy));
    }
    const auto& kern = simd::active();
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t offset = m - 1 - i;
        const auto& src = shifted[offset & 63];
        const auto window = src.words().subspan(offset >> 6, key_words);
        out.set(i, kern.and_parity(window, key.words()) != 0);
    }
    return out;
}

}  // namespace cka::postprocess
