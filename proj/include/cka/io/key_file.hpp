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

#include <filesystem>
#include <iosfwd>

#include "cka/bits.hpp"

namespace cka::io {

/// Key files: an ASCII header line `cka-key <bit count>` followed by the bits
/// packed 8 per byte, most significant bit first, final byte zero padded.
void write_key(std::ostream& out, const BitVec& key);
BitVec read_key(std::istream& in);
void write_key_file(const std::filesystem::path& path, const BitVec& key);
BitVec read_key_file(const std::filesystem::path& path);

/// Headerless packed bits (parity streams). The reader needs the bit count.
void write_raw_bits_file(const std::filesystem::path& path, const BitVec& bits);
BitVec read_raw_bits_file(const std::filesystem::path& path, std::size_t bit_count);

}  // namespace cka::io
