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

#include <filesystem>
#include <sstream>

#include "doctest.h"

#include "cka/cli/run_config.hpp"
#include "cka/error.hpp"
#include "cka/io/key_file.hpp"
#include "cka/io/pbm.hpp"
#include "cka/random.hpp"

using namespace cka;
namespace fs = std::filesystem;

namespace {

BitVec random_bits(Rng& rng, std::size_t n) {
    BitVec b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, rng() & 1U);
    return b;
}

io::BinaryImage random_image(Rng& rng, std::size_t w, std::size_t h) {
    return {w, h, random_bits(rng, w * h)};
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "cka_test_io";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("key files round-trip any bit length") {
    Rng rng(71);
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 41033u}) {
        CAPTURE(n);
        const BitVec key = random_bits(rng, n);
        std::stringstream ss;
        io::write_key(ss, key);
        CHECK(ss.str().rfind("cka-key " + std::to_string(n) + "\n", 0) == 0);
        CHECK(ss.str().size() == ("cka-key " + std::to_string(n) + "\n").size() + (n + 7) / 8);
        CHECK(io::read_key(ss) == key);

        const fs::path path = scratch_dir() / "key.bin";
        io::write_key_file(path, key);
        CHECK(io::read_key_file(path) == key);
        io::write_raw_bits_file(path, key);
        CHECK(fs::file_size(path) == (n + 7) / 8);
        CHECK(io::read_raw_bits_file(path, n) == key);
    }
    std::stringstream bad("cka-key 20\nab");
    CHECK_THROWS_AS(io::read_key(bad), IoError);
    std::stringstream wrong("P4 1 1\n");
    CHECK_THROWS_AS(io::read_key(wrong), IoError);
    CHECK_THROWS_AS(io::read_key_file(scratch_dir() / "missing.bin"), IoError);
}

TEST_CASE("key bytes are most significant bit first") {
    std::stringstream ss;
    io::write_key(ss, BitVec::from_string("1000000011"));
    const std::string s = ss.str();
    CHECK(s.substr(s.size() - 2) == std::string("\x80\xC0", 2));
}

TEST_CASE("PBM P1 and P4 round-trip and cross-convert") {
    Rng rng(72);
    for (auto [w, h] : {std::pair<std::size_t, std::size_t>{1, 1}, {7, 3}, {8, 2}, {35, 4}, {128, 96}, {130, 5}}) {
        const auto img = random_image(rng, w, h);
        std::stringstream p1, p4, back;
        io::write_pbm(p1, img, io::PbmFormat::plain_p1);
        io::write_pbm(p4, img, io::PbmFormat::raw_p4);
        const auto from_p1 = io::read_pbm(p1);
        CHECK(from_p1 == img);
        CHECK(io::read_pbm(p4) == img);
        io::write_pbm(back, from_p1, io::PbmFormat::raw_p4);
        std::stringstream again;
        io::write_pbm(again, io::read_pbm(back), io::PbmFormat::plain_p1);
        std::stringstream reference;
        io::write_pbm(reference, img, io::PbmFormat::plain_p1);
        CHECK(again.str() == reference.str());
    }
}

TEST_CASE("PBM reader accepts comments and rejects garbage") {
    std::stringstream with_comment("P1\n# a comment\n3 2 # trailing\n1 0 1\n0 1 0\n");
    const auto img = io::read_pbm(with_comment);
    CHECK(img.width == 3);
    CHECK(img.pixels.to_string() == "101010");
    std::stringstream compact("P1\n2 2\n1001\n");
    CHECK(io::read_pbm(compact).pixels.to_string() == "1001");
    std::stringstream not_pbm("P5\n1 1\n255\n");
    CHECK_THROWS_AS(io::read_pbm(not_pbm), IoError);
    std::stringstream short_p4("P4\n16 2\n\x01");
    CHECK_THROWS_AS(io::read_pbm(short_p4), IoError);
    std::stringstream short_p1("P1\n2 2\n1 0 1\n");
    CHECK_THROWS_AS(io::read_pbm(short_p1), IoError);
}

TEST_CASE("xor cipher is self-inverse and local") {
    Rng rng(73);
    const auto img = random_image(rng, 40, 30);
    const BitVec key = random_bits(rng, 1500);
    const auto enc = io::xor_cipher(img, key);
    CHECK(io::xor_cipher(enc, key) == img);
    CHECK(io::xor_cipher(img, BitVec(1200)) == img);

    BitVec other = key;
    for (std::size_t i : {0u, 5u, 1199u, 1300u}) other.flip(i);
    CHECK(io::pixel_differences(io::xor_cipher(enc, other), img) == 3);
    CHECK_THROWS_AS(io::xor_cipher(img, BitVec(1199)), SizeError);
    CHECK_THROWS_AS(io::pixel_differences(img, random_image(rng, 30, 40)), SizeError);
}

TEST_CASE("run configs round-trip through text") {
    Rng rng(74);
    for (int trial = 0; trial < 50; ++trial) {
        cli::RunConfig c;
        c.protocol.config = protocol::kAllConfigurations[uniform_below(rng, 4)];
        c.protocol.p = 0.001 + 0.998 * uniform01(rng);
        c.protocol.total_rounds = 1 + uniform_below(rng, 1'000'000'000);
        c.protocol.scheduling = bernoulli(rng, 0.5) ? protocol::Scheduling::per_run : protocol::Scheduling::per_round;
        c.protocol.run_length = 1 + uniform_below(rng, 1000);
        c.protocol.seed = rng();
        c.noise = bernoulli(rng, 0.5) ? quantum::NoiseModel::white(uniform01(rng)) : quantum::NoiseModel::ideal();
        c.block_n = bernoulli(rng, 0.5) ? 16200 : 64800;
        c.rate = std::array{postprocess::CodeRate::half(), postprocess::CodeRate::three_fifths(),
                            postprocess::CodeRate::two_thirds()}[uniform_below(rng, 3)];
        c.max_iters = 1 + static_cast<int>(uniform_below(rng, 200));
        c.column_weight = 3.0 + uniform01(rng) * 3.0;
        c.code_seed = rng();
        c.eps = std::pow(10.0, -1 - 12 * uniform01(rng));
        c.out_dir = "out dir/" + std::to_string(trial);
        CHECK(cli::parse_config(cli::serialize(c)) == c);
    }
}

TEST_CASE("config parser diagnostics") {
    const auto c = cli::parse_config("# comment\n\nconfiguration = y3\np = 0.05  # inline\nvisibility = 0.8\n");
    CHECK(c.protocol.config == protocol::Configuration::Y3);
    CHECK(c.protocol.p == 0.05);
    CHECK_THROWS_AS(cli::parse_config("colour = blue\n"), ConfigurationError);
    CHECK_THROWS_AS(cli::parse_config("p = lots\n"), ConfigurationError);
    CHECK_THROWS_AS(cli::parse_config("just words\n"), ConfigurationError);
    CHECK_THROWS_AS(cli::parse_config("block_n = 1000\n"), ConfigurationError);
    CHECK_THROWS_AS(cli::parse_config("rate = 3/4\n"), ConfigurationError);
    CHECK_THROWS_AS(cli::load_config(scratch_dir() / "absent.cfg"), IoError);
}
