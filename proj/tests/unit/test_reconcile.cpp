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

#include "doctest.h"

#include "cka/error.hpp"
#include "cka/postprocess/reconcile.hpp"
#include "cka/random.hpp"

using namespace cka;
using namespace cka::postprocess;

namespace {

BitVec random_bits(Rng& rng, std::size_t n, double p = 0.5) {
    BitVec b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, bernoulli(rng, p));
    return b;
}

// Dense Toeplitz product: entry (i, j) is diagonal bit i - j + n - 1.
BitVec toeplitz_oracle(const BitVec& key, std::size_t m, std::uint64_t seed) {
    const std::size_t n = key.size();
    const BitVec diag = toeplitz_diagonals(n, m, seed);
    BitVec out(m);
    for (std::size_t i = 0; i < m; ++i) {
        bool acc = false;
        for (std::size_t j = 0; j < n; ++j) acc ^= diag[i + n - 1 - j] && key[j];
        out.set(i, acc);
    }
    return out;
}

}  // namespace

TEST_CASE("parities cover a zero-padded final block") {
    const auto h = build_code(1000, CodeRate::half(), 2, 3.0, true);
    CHECK(block_count(1000, h) == 2);
    CHECK(block_count(1001, h) == 3);
    Rng rng(51);
    const BitVec key = random_bits(rng, 1234);
    const BitVec par = compute_parities(key, h);
    CHECK(par.size() == 3 * h.num_checks());
    BitVec last = key.slice(1000, 234);
    last.resize(500);
    CHECK(par.slice(1000, 500) == encode_syndrome(last, h));
    CHECK(par.slice(0, 500) == encode_syndrome(key.slice(0, 500), h));
}

TEST_CASE("identical keys reconcile with zero residual and full leakage accounting") {
    Rng rng(52);
    const auto h = build_code(16200, CodeRate::half(), kDefaultCodeSeed);
    const BitVec key = random_bits(rng, 20000);
    const auto r = reconcile_keys(key, key, h, 0.05);
    CHECK(r.corrected == key);
    CHECK(r.residual_error_rate == 0.0);
    CHECK(r.raw_error_rate == 0.0);
    CHECK(r.blocks == 3);
    CHECK(r.leakage_bits == 3 * 8100);
    CHECK(r.failed_blocks == 0);
    CHECK_THROWS_AS(reconcile_keys(key, key.slice(0, 100), h, 0.05), ContractError);
}

TEST_CASE("noisy keys at 9.6 percent are fully corrected at rate 1/2") {
    Rng rng(53);
    const BitVec a = random_bits(rng, 41033);
    const BitVec b = a ^ random_bits(rng, a.size(), 0.096);
    const auto r = reconcile_keys(a, b, CodeRate::half(), 16200, 0.096);
    CHECK(r.raw_error_rate == doctest::Approx(0.096).epsilon(0.05));
    CHECK(r.residual_error_rate == 0.0);
    CHECK(r.corrected == a);
    CHECK(r.blocks == 6);

    std::size_t failed = 99;
    const auto h = build_code(16200, CodeRate::half(), kDefaultCodeSeed);
    CHECK(correct_key(b, compute_parities(a, h), h, 0.096, kDefaultMaxIterations, &failed) == a);
    CHECK(failed == 0);
}

TEST_CASE("privacy amplification matches the dense Toeplitz oracle") {
    Rng rng(54);
    for (std::size_t n : {1u, 63u, 64u, 65u, 200u, 777u}) {
        for (std::size_t m : {std::size_t{0}, std::size_t{1}, n / 2, n}) {
            CAPTURE(n);
            CAPTURE(m);
            const BitVec key = random_bits(rng, n);
            const auto out = privacy_amplify(key, m, 77 + n);
            CHECK(out.size() == m);
            CHECK(out == toeplitz_oracle(key, m, 77 + n));
        }
    }
}

TEST_CASE("privacy amplification is linear and seeded") {
    Rng rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const BitVec a = random_bits(rng, 5000), b = random_bits(rng, 5000);
        CHECK(privacy_amplify(a ^ b, 3000, 9) == (privacy_amplify(a, 3000, 9) ^ privacy_amplify(b, 3000, 9)));
    }
    const BitVec a = random_bits(rng, 4096);
    CHECK(privacy_amplify(a, 4096, 1) == privacy_amplify(a, 4096, 1));
    CHECK_FALSE(privacy_amplify(a, 4096, 1) == privacy_amplify(a, 4096, 2));
    CHECK(privacy_amplify(a, 0, 1).empty());
    CHECK_THROWS_AS(privacy_amplify(a, 4097, 1), ContractError);
}
