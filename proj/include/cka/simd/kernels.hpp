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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Word-parallel GF(2) kernels over packed 64-bit words.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The active variant
// is chosen once at startup from CPU features and may be pinned with the
// CKA_SIMD environment variable ("scalar", "avx2", "neon").

namespace cka::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Variants compiled into this binary and supported by the running CPU.
bool isa_available(Isa isa);

struct KernelTable {
    Isa isa;
    /// dst[i] ^= src[i]
    void (*xor_into)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
    /// Number of set bits in a[i] ^ b[i].
    std::uint64_t (*hamming)(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
    /// Parity of popcount(a[i] & b[i]), i.e. the GF(2) inner product.
    unsigned (*and_parity)(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
};

const KernelTable& kernels_for(Isa isa);

/// The table selected for this process.
const KernelTable& active();

namespace scalar {
void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
std::uint64_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
unsigned and_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
}  // namespace scalar

}  // namespace cka::simd
