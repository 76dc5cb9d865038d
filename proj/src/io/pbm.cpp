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

#include "cka/io/pbm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cka/error.hpp"

namespace cka::io {

namespace {

void skip_space_and_comments(std::istream& in) {
    while (true) {
        const int c = in.peek();
        if (c == '#') {
            std::string ignored;
            std::getline(in, ignored);
        } else if (c != EOF && std::isspace(c)) {
            in.get();
        } else {
            return;
        }
    }
}

std::size_t read_dimension(std::istream& in) {
    skip_space_and_comments(in);
    std::size_t v = 0;
    if (!(in >> v) || v == 0) throw IoError("PBM header has an invalid dimension");
    return v;
}

}  // namespace

BinaryImage read_pbm(std::istream& in) {
    char magic[2] = {0, 0};
    if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '1' && magic[1] != '4')) {
        throw IoError("not a PBM image (expected P1 or P4)");
    }
    BinaryImage img;
    img.width = read_dimension(in);
    img.height = read_dimension(in);
    img.pixels = BitVec(img.width * img.height);

    if (magic[1] == '1') {
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            skip_space_and_comments(in);
            const int c = in.get();
            if (c != '0' && c != '1') throw IoError("P1 image data is truncated or malformed");
            img.pixels.set(i, c == '1');
        }
        return img;
    }

    // Exactly one whitespace byte separates the P4 header from the raster.
    if (!std::isspace(in.get())) throw IoError("P4 header is not terminated by whitespace");
    const std::size_t row_bytes = (img.width + 7) / 8;
    std::vector<char> row(row_bytes);
    for (std::size_t y = 0; y < img.height; ++y) {
        if (!in.read(row.data(), static_cast<std::streamsize>(row_bytes))) throw IoError("P4 raster is truncated");
        for (std::size_t x = 0; x < img.width; ++x) {
            const auto byte = static_cast<unsigned char>(row[x / 8]);
            if (byte & (0x80U >> (x % 8))) img.pixels.set(y * img.width + x, true);
        }
    }
    return img;
}

void write_pbm(std::ostream& out, const BinaryImage& img, PbmFormat format) {
    if (img.pixels.size() != img.width * img.height) throw ContractError("image pixel count does not match its size");
    if (format == PbmFormat::plain_p1) {
        out << "P1\n" << img.width << ' ' << img.height << '\n';
        for (std::size_t y = 0; y < img.height; ++y) {
            for (std::size_t x = 0; x < img.width; ++x) {
                // Plain PBM lines should stay within 70 characters.
                if (x > 0) out << ((x % 35) == 0 ? '\n' : ' ');
                out << (img.pixels[y * img.width + x] ? '1' : '0');
            }
            out << '\n';
        }
        return;
    }
    out << "P4\n" << img.width << ' ' << img.height << '\n';
    const std::size_t row_bytes = (img.width + 7) / 8;
    std::vector<char> row(row_bytes);
    for (std::size_t y = 0; y < img.height; ++y) {
        std::fill(row.begin(), row.end(), 0);
        for (std::size_t x = 0; x < img.width; ++x) {
            if (img.pixels[y * img.width + x]) row[x / 8] = static_cast<char>(row[x / 8] | (0x80 >> (x % 8)));
        }
        out.write(row.data(), static_cast<std::streamsize>(row_bytes));
    }
}

BinaryImage read_pbm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_pbm(in);
}

void write_pbm_file(const std::filesystem::path& path, const BinaryImage& image, PbmFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_pbm(out, image, format);
    if (!out) throw IoError("failed writing " + path.string());
}

BinaryImage xor_cipher(const BinaryImage& image, const BitVec& key) {
    const std::size_t n = image.width * image.height;
    if (key.size() < n) {
        throw SizeError("key has " + std::to_string(key.size()) + " bits, image needs " + std::to_string(n));
    }
    BinaryImage out = image;
    out.pixels ^= key.slice(0, n);
    return out;
}

std::size_t pixel_differences(const BinaryImage& a, const BinaryImage& b) {
    if (a.width != b.width || a.height != b.height) throw SizeError("images differ in size");
    return hamming_distance(a.pixels, b.pixels);
}

}  // namespace cka::io
