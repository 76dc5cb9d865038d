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
#include <filesystem>
#include <iosfwd>

#include "cka/bits.hpp"

namespace cka::io {

/// Row-major black/white pixels; a set bit is black, as in PBM.
struct BinaryImage {
    std::size_t width = 0;
    std::size_t height = 0;
    BitVec pixels;

    bool operator==(const BinaryImage&) const = default;
};

enum class PbmFormat { plain_p1, raw_p4 };

BinaryImage read_pbm(std::istream& in);
void write_pbm(std::ostream& out, const BinaryImage& image, PbmFormat format);
BinaryImage read_pbm_file(const std::filesystem::path& path);
void write_pbm_file(const std::filesystem::path& path, const BinaryImage& image, PbmFormat format);

/// pixel_i xor key_i over the first width * height key bits. Self-inverse.
BinaryImage xor_cipher(const BinaryImage& image, const BitVec& key);

/// Pixels that differ between two images of the same shape.
std::size_t pixel_differences(const BinaryImage& a, const BinaryImage& b);

}  // namespace cka::io
