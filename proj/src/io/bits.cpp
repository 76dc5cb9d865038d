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

#include "cka/bits.hpp"

#include <bit>

#include "cka/error.hpp"
#include "cka/simd/kernels.hpp"

namespace cka {

namespace {
constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }
}  // namespace

BitVec::BitVec(std::size_t size, bool value) : size_(size), words_(words_for(size), value ? ~std::uint64_t{0} : 0) {
    clear_tail();
}

BitVec BitVec::from_string(std::string_view bits) {
    BitVec out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            out.set(i, true);
        } else if (bits[i] != '0') {
            throw ContractError("bit string contains a character other than 0 or 1");
        }
    }
    return out;
}

bool BitVec::at(std::size_t i) const {
    if (i >= size_) throw IndexError("bit index " + std::to_string(i) + " out of range");
    return (*this)[i];
}

void BitVec::set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void BitVec::push_back(bool value) {
    if ((size_ & 63) == 0) words_.push_back(0);
    ++size_;
    set(size_ - 1, value);
}

void BitVec::resize(std::size_t size) {
    words_.resize(words_for(size), 0);
    size_ = size;
    clear_tail();
}

void BitVec::append(const BitVec& other) {
    const std::size_t offset = size_;
    resize(size_ + other.size_);
    if ((offset & 63) == 0) {
        for (std::size_t w = 0; w < other.words_.size(); ++w) words_[(offset >> 6) + w] = other.words_[w];
        return;
    }
    for (std::size_t i = 0; i < other.size_; ++i) {
        if (other[i]) set(offset + i, true);
    }
}

BitVec BitVec::slice(std::size_t begin, std::size_t count) const {
    if (begin + count > size_) throw IndexError("slice exceeds bit string length");
    BitVec out(count);
    const unsigned shift = begin & 63;
    const std::size_t base = begin >> 6;
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        std::uint64_t lo = words_[base + w] >> shift;
        if (shift != 0 && base + w + 1 < words_.size()) lo |= words_[base + w + 1] << (64 - shift);
        out.words_[w] = lo;
    }
    out.clear_tail();
    return out;
}

BitVec& BitVec::operator^=(const BitVec& other) {
    if (other.size_ != size_) throw SizeError("xor of bit strings with different lengths");
    simd::active().xor_into(words_, other.words_);
    return *this;
}

std::size_t BitVec::count() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::string BitVec::to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if ((*this)[i]) out[i] = '1';
    }
    return out;
}

std::vector<std::uint8_t> BitVec::to_bytes() const {
    std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
    for (std::size_t i = 0; i < size_; ++i) {
        if ((*this)[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
    }
    return out;
}

BitVec BitVec::from_bytes(std::span<const std::uint8_t> bytes, std::size_t size) {
    if (bytes.size() * 8 < size) throw SizeError("byte buffer shorter than requested bit length");
    BitVec out(size);
    for (std::size_t i = 0; i < size; ++i) {
        if (bytes[i / 8] & (0x80U >> (i % 8))) out.set(i, true);
    }
    return out;
}

void BitVec::clear_tail() {
    if ((size_ & 63) != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    }
}

std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw SizeError("hamming distance of bit strings with different lengths");
    return static_cast<std::size_t>(simd::active().hamming(a.words(), b.words()));
}

}  // namespace cka
