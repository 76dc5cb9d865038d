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

#include "kernels_internal.hpp"

#if CKA_HAVE_NEON

#include <arm_neon.h>

#include <bit>

namespace cka::simd::neon {

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    const std::size_t n = dst.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_u64(dst.data() + i, veorq_u64(vld1q_u64(dst.data() + i), vld1q_u64(src.data() + i)));
    }
    for (; i < n; ++i) {
        dst[i] ^= src[i];
    }
}

std::uint64_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    const std::size_t n = a.size();
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t x = veorq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i));
        total += vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(x)));
    }
    for (; i < n; ++i) {
        total += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
    }
    return total;
}

unsigned and_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    const std::size_t n = a.size();
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = veorq_u64(acc, vandq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i)));
    }
    std::uint64_t tail = vgetq_lane_u64(acc, 0) ^ vgetq_lane_u64(acc, 1);
    for (; i < n; ++i) {
        tail ^= a[i] & b[i];
    }
    return static_cast<unsigned>(std::popcount(tail) & 1);
}

}  // namespace cka::simd::neon

#endif
