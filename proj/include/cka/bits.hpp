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
#include <string>
#include <string_view>
#include <vector>

namespace cka {

/// Packed bit string. Bit i lives in word i / 64 at position i % 64; bits past
/// size() in the last word are always zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t size, bool value = false);

    /// Parses a string of '0'/'1' characters.
    static BitVec from_string(std::string_view bits);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    bool at(std::size_t i) const;
    void set(std::size_t i, bool value);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void push_back(bool value);
    void resize(std::size_t size);
    void append(const BitVec& other);

    /// Copy of bits [begin, begin + count).
    BitVec slice(std::size_t begin, std::size_t count) const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    BitVec& operator^=(const BitVec& other);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    bool operator==(const BitVec& other) const = default;

    std::size_t count() const;
    std::string to_string() const;

    /// MSB-first byte packing; the final byte is zero padded.
    std::vector<std::uint8_t> to_bytes() const;
    static BitVec from_bytes(std::span<const std::uint8_t> bytes, std::size_t size);

private:
    void clear_tail();

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Number of positions where a and b differ. Sizes must match.
std::size_t hamming_distance(const BitVec& a, const BitVec& b);

}  // namespace cka
