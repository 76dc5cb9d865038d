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

#include "cka/io/key_file.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include "cka/error.hpp"

namespace cka::io {

namespace {

constexpr std::string_view kKeyMagic = "cka-key";

std::vector<std::uint8_t> read_all(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

void write_key(std::ostream& out, const BitVec& key) {
    out << kKeyMagic << ' ' << key.size() << '\n';
    const auto bytes = key.to_bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

BitVec read_key(std::istream& in) {
    std::string magic;
    std::size_t bits = 0;
    if (!(in >> magic >> bits) || magic != kKeyMagic || in.get() != '\n') {
        throw IoError("not a key file (expected a `cka-key <bits>` header)");
    }
    const auto bytes = read_all(in);
    if (bytes.size() != (bits + 7) / 8) throw IoError("key file body length does not match its header");
    return BitVec::from_bytes(bytes, bits);
}

void write_key_file(const std::filesystem::path& path, const BitVec& key) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_key(out, key);
    if (!out) throw IoError("failed writing " + path.string());
}

BitVec read_key_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_key(in);
}

void write_raw_bits_file(const std::filesystem::path& path, const BitVec& bits) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const auto bytes = bits.to_bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

BitVec read_raw_bits_file(const std::filesystem::path& path, std::size_t bit_count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    const auto bytes = read_all(in);
    if (bytes.size() != (bit_count + 7) / 8) {
        throw IoError(path.string() + " holds " + std::to_string(bytes.size()) + " bytes, expected " +
                      std::to_string((bit_count + 7) / 8));
    }
    return BitVec::from_bytes(bytes, bit_count);
}

}  // namespace cka::io
