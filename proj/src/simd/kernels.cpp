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

#include "cka/simd/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace cka::simd {

namespace scalar {

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] ^= src[i];
    }
}

std::uint64_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
    }
    return total;
}

unsigned and_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc ^= a[i] & b[i];
    }
    return static_cast<unsigned>(std::popcount(acc) & 1);
}

}  // namespace scalar

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::xor_into, &scalar::hamming, &scalar::and_parity};

#if CKA_HAVE_AVX2
constexpr KernelTable kAvx2{Isa::avx2, &avx2::xor_into, &avx2::hamming, &avx2::and_parity};
#endif
#if CKA_HAVE_NEON
constexpr KernelTable kNeon{Isa::neon, &neon::xor_into, &neon::hamming, &neon::and_parity};
#endif

bool cpu_has_avx2() {
#if CKA_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
    return false;
#endif
}

const KernelTable& select() {
    if (const char* forced = std::getenv("CKA_SIMD")) {
        const std::string name{forced};
        if (name == "scalar") return kScalar;
        if (name == "avx2" && isa_available(Isa::avx2)) return kernels_for(Isa::avx2);
        if (name == "neon" && isa_available(Isa::neon)) return kernels_for(Isa::neon);
    }
    if (isa_available(Isa::avx2)) return kernels_for(Isa::avx2);
    if (isa_available(Isa::neon)) return kernels_for(Isa::neon);
    return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2: {
            static const bool ok = cpu_has_avx2();
            return ok;
        }
        case Isa::neon: return CKA_HAVE_NEON != 0;
    }
    return false;
}

const KernelTable& kernels_for(Isa isa) {
#if CKA_HAVE_AVX2
    if (isa == Isa::avx2 && isa_available(Isa::avx2)) return kAvx2;
#endif
#if CKA_HAVE_NEON
    if (isa == Isa::neon) return kNeon;
#endif
    (void)isa;
    return kScalar;
}

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace cka::simd
