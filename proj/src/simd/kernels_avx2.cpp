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

// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include "kernels_internal.hpp"

#if CKA_HAVE_AVX2

#include <immintrin.h>

#include <bit>

namespace cka::simd::avx2 {

namespace {

inline std::uint64_t popcount256(__m256i v) {
    return static_cast<std::uint64_t>(_mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v, 0))) +
                                      _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v, 1))) +
                                      _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v, 2))) +
                                      _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v, 3))));
}

}  // namespace

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    const std::size_t n = dst.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
        const auto* s = reinterpret_cast<const __m256i*>(src.data() + i);
        _mm256_storeu_si256(d, _mm256_xor_si256(_mm256_loadu_si256(d), _mm256_loadu_si256(s)));
    }
    for (; i < n; ++i) {
        dst[i] ^= src[i];
    }
}

std::uint64_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    const std::size_t n = a.size();
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
        total += popcount256(_mm256_xor_si256(va, vb));
    }
    for (; i < n; ++i) {
        total += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
    }
    return total;
}

unsigned and_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    const std::size_t n = a.size();
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
        acc = _mm256_xor_si256(acc, _mm256_and_si256(va, vb));
    }
    std::uint64_t tail = static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) ^
                         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) ^
                         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) ^
                         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
    for (; i < n; ++i) {
        tail ^= a[i] & b[i];
    }
    return static_cast<unsigned>(std::popcount(tail) & 1);
}

}  // namespace cka::simd::avx2

#endif
