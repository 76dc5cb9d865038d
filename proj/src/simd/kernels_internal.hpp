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
#include <span>

#if defined(__x86_64__) || defined(_M_X64)
#define CKA_HAVE_AVX2 1
#else
#define CKA_HAVE_AVX2 0
#endif

#if defined(__aarch64__) && defined(__ARM_NEON)
#define CKA_HAVE_NEON 1
#else
#define CKA_HAVE_NEON 0
#endif

namespace cka::simd {

#if CKA_HAVE_AVX2
namespace avx2 {
void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
std::uint64_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
unsigned and_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
}  // namespace avx2
#endif

#if CKA_HAVE_NEON
namespace neon {
void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
std::uint64_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
unsigned and_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
}  // namespace neon
#endif

}  // namespace cka::simd
