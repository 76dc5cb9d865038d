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

#include "cka/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cka/error.hpp"
#include "cka/io/key_file.hpp"
#include "cka/keyrate/keyrate.hpp"
#include "cka/postprocess/reconcile.hpp"

namespace cka::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json to_json(const protocol::ErrorEstimate& e) {
    return ordered_json{{"num_keygen", e.num_keygen},      {"num_verif", e.num_verif},
                        {"q_keygen", e.q_keygen},          {"q_keygen_se", e.se_keygen},
                        {"q_keygen_ab", e.q_keygen_ab},    {"q_keygen_ab_se", e.se_keygen_ab},
                        {"q_keygen_ac", e.q_keygen_ac},    {"q_keygen_ac_se", e.se_keygen_ac},
                        {"q_keygen_bc", e.q_keygen_bc},    {"q_keygen_bc_se", e.se_keygen_bc},
                        {"q_keygen_max", e.q_keygen_max()}, {"q_verif", e.q_verif},
                        {"q_verif_se", e.se_verif}};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

fs::path prepare_out_dir(const RunConfig& c) {
    fs::path dir(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

postprocess::ParityCheckMatrix code_for(const RunConfig& c, const std::string& matrix_path) {
    if (!matrix_path.empty()) {
        std::ifstream in(matrix_path);
        if (!in) throw IoError("cannot open matrix " + matrix_path);
        return postprocess::read_matrix(in);
    }
    return postprocess::build_code(c.block_n, c.rate, c.code_seed, c.column_weight);
}

double percent(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

/// Options shared by every subcommand; each overrides the config file.
struct CommonOptions {
    std::string config_path;
    std::map<std::string, std::string> values;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "Run configuration file (key = value lines)");
        add(app, "--seed", "seed", "Master seed (u64)");
        add(app, "--p", "p", "Verification fraction");
        add(app, "--rounds", "rounds", "Total protocol rounds L");
        add(app, "--configuration", "configuration", "Network configuration {x2,y2,x3,y3}");
        add(app, "--visibility", "visibility", "White-noise visibility in [0,1]; implies --noise white");
        add(app, "--scheduling", "scheduling", "per_round or per_run");
        add(app, "--run-length", "run_length", "Rounds per run for per_run scheduling");
        add(app, "--rate", "rate", "LDPC code rate {1/2,3/5,2/3}");
        add(app, "--block-n", "block_n", "LDPC block length {16200,64800}");
        add(app, "--max-iters", "max_iters", "Belief propagation iteration cap");
        add(app, "--eps", "eps", "Security parameter epsilon_S");
        add(app, "--out", "out", "Output directory");
    }

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { values[key] = v; }, help);
    }

    RunConfig resolve() const {
        RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const auto& [key, value] : values) {
            set_field(c, key, value);
            if (key == "visibility") c.noise.kind = quantum::NoiseKind::global_white_noise;
        }
        c.validate();
        return c;
    }
};

int cmd_simulate(const RunConfig& c, std::ostream& out) {
    const fs::path dir = prepare_out_dir(c);
    const auto t = protocol::run_protocol(c.protocol, c.noise);
    {
        std::ofstream tf(dir / "transcript.txt", std::ios::binary);
        if (!tf) throw IoError("cannot write transcript");
        protocol::write_transcript(tf, t);
    }
    io::write_key_file(dir / "key_a.bin", t.key_a);
    io::write_key_file(dir / "key_b.bin", t.key_b);
    io::write_key_file(dir / "key_c.bin", t.key_c);
    write_text(dir / "config.txt", serialize(c));

    ordered_json report{{"configuration", protocol::to_string(c.protocol.config)},
                        {"rounds", t.params.total_rounds},
                        {"key_bits", t.key_a.size()}};
    try {
        report["estimate"] = to_json(protocol::estimate_errors(t));
    } catch (const EstimationError& e) {
        report["estimate"] = nullptr;
        report["estimate_error"] = e.what();
    }
    const std::string text = report.dump(2) + "\n";
    write_text(dir / "estimate.json", text);
    out << text;
    return 0;
}

double crossover_from_estimate(const fs::path& dir) {
    std::ifstream in(dir / "estimate.json");
    if (!in) throw ConfigurationError("no --crossover given and no estimate.json in " + dir.string());
    const auto j = ordered_json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("estimate") || !j["estimate"].is_object()) {
        throw IoError("estimate.json is malformed");
    }
    return j["estimate"]["q_keygen_max"].get<double>();
}

int cmd_reconcile(const RunConfig& c, const std::string& key_a_path, const std::string& key_b_path,
                  std::optional<double> crossover, const std::string& matrix_path, const std::string& export_matrix,
                  std::ostream& out) {
    const fs::path dir = prepare_out_dir(c);
    const fs::path a_path = key_a_path.empty() ? dir / "key_a.bin" : fs::path(key_a_path);
    const fs::path b_path = key_b_path.empty() ? dir / "key_b.bin" : fs::path(key_b_path);
    const BitVec key_a = io::read_key_file(a_path);
    const BitVec key_b = io::read_key_file(b_path);
    const double q = crossover ? *crossover : crossover_from_estimate(dir);
    const auto h = code_for(c, matrix_path);
    if (!export_matrix.empty()) {
        std::ofstream mf(export_matrix);
        if (!mf) throw IoError("cannot write " + export_matrix);
        postprocess::write_matrix(mf, h);
    }
    const auto parities = postprocess::compute_parities(key_a, h);
    const auto result = postprocess::reconcile_keys(key_a, key_b, h, q, c.max_iters);

    const std::string stem = b_path.stem().string();
    io::write_raw_bits_file(dir / "parity_a.bin", parities);
    io::write_key_file(dir / (stem + "_cor.bin"), result.corrected);
    ordered_json report{{"key_bits", key_a.size()},
                        {"block_n", h.n()},
                        {"k", h.k()},
                        {"rate", static_cast<double>(h.k()) / h.n()},
                        {"crossover", q},
                        {"blocks", result.blocks},
                        {"failed_blocks", result.failed_blocks},
                        {"raw_error_rate", result.raw_error_rate},
                        {"residual_error_rate", result.residual_error_rate},
                        {"leakage_bits", result.leakage_bits}};
    const std::string text = report.dump(2) + "\n";
    write_text(dir / ("reconcile_" + stem + ".json"), text);
    out << text;
    return 0;
}

struct KeyrateOptions {
    double q_verif = 0.112;
    double q_keygen = 0.0959;
    double sigma_verif = 0.0;
    double sigma_keygen = 0.0;
    double l_min = 1e4;
    double l_max = 1e12;
    int l_points = 33;
    double p_min = 1e-5;
    double p_max = 0.5;
    int p_points = 41;
};

int cmd_keyrate(const RunConfig& c, const KeyrateOptions& k, std::ostream& out) {
    const fs::path dir = prepare_out_dir(c);
    std::ostringstream csv;
    csv << "L,p,FKR\n";
    char line[96];
    for (const auto& pt : keyrate::rate_surface(k.q_verif, k.q_keygen, c.eps, k.l_min, k.l_max, k.l_points, k.p_min,
                                                 k.p_max, k.p_points)) {
        std::snprintf(line, sizeof line, "%.0f,%.9g,%.9g\n", pt.total_rounds, pt.p, pt.fkr);
        csv << line;
    }
    write_text(dir / "fkr_surface.csv", csv.str());

    std::ostringstream opt_csv;
    opt_csv << "L,p_star,FKR_star\n";
    for (double l : keyrate::log_space(k.l_min, k.l_max, k.l_points)) {
        const auto o = keyrate::optimize_p(k.q_verif, k.q_keygen, std::floor(l), c.eps);
        std::snprintf(line, sizeof line, "%.0f,%.9g,%.9g\n", std::floor(l), o.p, o.fkr);
        opt_csv << line;
    }
    write_text(dir / "fkr_optimal.csv", opt_csv.str());

    const double qv = std::min(k.q_verif, 0.5);
    const double qk = std::min(k.q_keygen, 0.5);
    const double akr = keyrate::asymptotic_key_rate(qv, qk);
    const auto lmin = keyrate::min_length_positive(qv, qk, c.eps);
    ordered_json report{{"q_verif", k.q_verif},
                        {"q_keygen_max", k.q_keygen},
                        {"saturated", k.q_verif > 0.5 || k.q_keygen > 0.5},
                        {"h_q_verif", keyrate::binary_entropy(qv)},
                        {"h_q_keygen_max", keyrate::binary_entropy(qk)},
                        {"akr", akr},
                        {"akr_sigma", keyrate::asymptotic_key_rate_sigma(qv, k.sigma_verif, qk, k.sigma_keygen)},
                        {"eps", c.eps}};
    if (lmin) {
        report["L_min"] = lmin->total_rounds;
        report["p_at_L_min"] = lmin->p;
    } else {
        report["L_min"] = "none in range";
        report["p_at_L_min"] = nullptr;
    }
    const auto top = keyrate::optimize_p(qv, qk, std::floor(k.l_max), c.eps);
    report["p_star_at_L_max"] = top.p;
    report["fkr_star_at_L_max"] = top.fkr;
    const std::string text = report.dump(2) + "\n";
    write_text(dir / "keyrate.json", text);
    out << text;
    return 0;
}

int cmd_cipher(const std::string& image_path, const std::string& key_path, const std::string& output,
               const std::string& format, std::ostream& out) {
    const auto image = io::read_pbm_file(image_path);
    const auto key = io::read_key_file(key_path);
    const auto result = io::xor_cipher(image, key);
    io::write_pbm_file(output, result, format == "p1" ? io::PbmFormat::plain_p1 : io::PbmFormat::raw_p4);
    out << "wrote " << output << " (" << image.width << "x" << image.height << ")\n";
    return 0;
}

int cmd_demo(const RunConfig& c, const std::string& image_path, std::ostream& out) {
    const fs::path dir = prepare_out_dir(c);
    const auto image = io::read_pbm_file(image_path);
    const auto r = demo_pipeline(c, image);
    io::write_pbm_file(dir / "original.pbm", image, io::PbmFormat::raw_p4);
    io::write_pbm_file(dir / "encrypted.pbm", r.encrypted, io::PbmFormat::raw_p4);
    io::write_pbm_file(dir / "decrypted_raw_b.pbm", r.decrypted_raw_b, io::PbmFormat::raw_p4);
    io::write_pbm_file(dir / "decrypted_raw_c.pbm", r.decrypted_raw_c, io::PbmFormat::raw_p4);
    io::write_pbm_file(dir / "decrypted_cor_b.pbm", r.decrypted_cor_b, io::PbmFormat::raw_p4);
    io::write_pbm_file(dir / "decrypted_cor_c.pbm", r.decrypted_cor_c, io::PbmFormat::raw_p4);
    ordered_json report{{"estimate", to_json(r.estimate)},
                        {"key_bits", r.key_bits},
                        {"image_bits", r.image_bits},
                        {"rate", c.rate.to_string()},
                        {"crossover", r.crossover},
                        {"residual_b", r.residual_b},
                        {"residual_c", r.residual_c},
                        {"failed_blocks_b", r.failed_blocks_b},
                        {"failed_blocks_c", r.failed_blocks_c},
                        {"leakage_bits", r.leakage_bits},
                        {"pixel_error_raw_b_percent", r.pixel_error_raw_b},
                        {"pixel_error_raw_c_percent", r.pixel_error_raw_c},
                        {"pixel_error_cor_b_percent", r.pixel_error_cor_b},
                        {"pixel_error_cor_c_percent", r.pixel_error_cor_c},
                        {"akr", r.akr}};
    const std::string text = report.dump(2) + "\n";
    write_text(dir / "demo.json", text);
    out << text;
    return 0;
}

}  // namespace

DemoReport demo_pipeline(const RunConfig& c, const io::BinaryImage& image) {
    c.validate();
    const auto t = protocol::run_protocol(c.protocol, c.noise);
    DemoReport r;
    r.image_bits = image.width * image.height;
    r.key_bits = t.key_a.size();
    if (r.key_bits < r.image_bits) {
        throw SizeError("insufficient key: image needs " + std::to_string(r.image_bits) + " bits, simulation produced " +
                        std::to_string(r.key_bits));
    }
    r.estimate = protocol::estimate_errors(t);
    r.crossover = r.estimate.q_keygen_max();
    r.akr = keyrate::asymptotic_key_rate(std::min(r.estimate.q_verif, 0.5), std::min(r.estimate.q_keygen_max(), 0.5));

    const auto h = postprocess::build_code(c.block_n, c.rate, c.code_seed, c.column_weight);
    const auto rec_b = postprocess::reconcile_keys(t.key_a, t.key_b, h, r.crossover, c.max_iters);
    const auto rec_c = postprocess::reconcile_keys(t.key_a, t.key_c, h, r.crossover, c.max_iters);
    r.residual_b = rec_b.residual_error_rate;
    r.residual_c = rec_c.residual_error_rate;
    r.failed_blocks_b = rec_b.failed_blocks;
    r.failed_blocks_c = rec_c.failed_blocks;
    r.leakage_bits = rec_b.leakage_bits;

    r.encrypted = io::xor_cipher(image, t.key_a);
    r.decrypted_raw_b = io::xor_cipher(r.encrypted, t.key_b);
    r.decrypted_raw_c = io::xor_cipher(r.encrypted, t.key_c);
    r.decrypted_cor_b = io::xor_cipher(r.encrypted, rec_b.corrected);
    r.decrypted_cor_c = io::xor_cipher(r.encrypted, rec_c.corrected);
    r.pixel_error_raw_b = percent(io::pixel_differences(image, r.decrypted_raw_b), r.image_bits);
    r.pixel_error_raw_c = percent(io::pixel_differences(image, r.decrypted_raw_c), r.image_bits);
    r.pixel_error_cor_b = percent(io::pixel_differences(image, r.decrypted_cor_b), r.image_bits);
    r.pixel_error_cor_c = percent(io::pixel_differences(image, r.decrypted_cor_c), r.image_bits);
    return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Anonymous conference key agreement toolkit on a four-qubit linear cluster state"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    auto* simulate = app.add_subcommand("simulate", "Run protocol rounds; write transcript, keys and Q estimates");
    sim_opts.attach(simulate);

    CommonOptions rec_opts;
    std::string key_a_path, key_b_path, matrix_path, export_matrix;
    std::optional<double> crossover;
    auto* reconcile = app.add_subcommand("reconcile", "LDPC-correct a key against Alice's parity bits");
    rec_opts.attach(reconcile);
    reconcile->add_option("--key-a", key_a_path, "Alice's key file (default <out>/key_a.bin)");
    reconcile->add_option("--key-b", key_b_path, "Key to correct (default <out>/key_b.bin)");
    reconcile->add_option("--crossover", crossover, "Channel prior (default q_keygen_max from <out>/estimate.json)");
    reconcile->add_option("--matrix", matrix_path, "Load [H'|S] from a sparse matrix file instead of generating it");
    reconcile->add_option("--export-matrix", export_matrix, "Write the parity-check matrix used");

    CommonOptions rate_opts;
    KeyrateOptions krate;
    auto* rate = app.add_subcommand("keyrate", "Asymptotic and finite key rate analysis");
    rate_opts.attach(rate);
    rate->add_option("--q-verif", krate.q_verif, "Verification error rate");
    rate->add_option("--q-keygen", krate.q_keygen, "Maximal pairwise key error rate");
    rate->add_option("--sigma-verif", krate.sigma_verif, "Std. error of q-verif (for the AKR error bar)");
    rate->add_option("--sigma-keygen", krate.sigma_keygen, "Std. error of q-keygen");
    rate->add_option("--l-min", krate.l_min, "Smallest L of the surface");
    rate->add_option("--l-max", krate.l_max, "Largest L of the surface");
    rate->add_option("--l-points", krate.l_points, "Number of L samples");
    rate->add_option("--p-min", krate.p_min, "Smallest p of the surface");
    rate->add_option("--p-max", krate.p_max, "Largest p of the surface");
    rate->add_option("--p-points", krate.p_points, "Number of p samples");

    std::string image_path, key_path, output_path, format = "p4";
    auto* encrypt = app.add_subcommand("encrypt", "XOR a PBM image with a key");
    auto* decrypt = app.add_subcommand("decrypt", "XOR a PBM image with a key (same operation as encrypt)");
    for (auto* sub : {encrypt, decrypt}) {
        sub->add_option("--image", image_path, "Input PBM (P1 or P4)")->required();
        sub->add_option("--key", key_path, "Key file")->required();
        sub->add_option("--output", output_path, "Output PBM")->required();
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"p1", "p4"}));
    }

    CommonOptions demo_opts;
    std::string demo_image;
    auto* demo = app.add_subcommand("demo", "Simulate, reconcile and run the image encryption round trip");
    demo_opts.attach(demo);
    demo->add_option("--image", demo_image, "PBM image to send")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*simulate) return cmd_simulate(sim_opts.resolve(), out);
        if (*reconcile) {
            return cmd_reconcile(rec_opts.resolve(), key_a_path, key_b_path, crossover, matrix_path, export_matrix,
                                 out);
        }
        if (*rate) return cmd_keyrate(rate_opts.resolve(), krate, out);
        if (*encrypt || *decrypt) return cmd_cipher(image_path, key_path, output_path, format, out);
        if (*demo) return cmd_demo(demo_opts.resolve(), demo_image, out);
    } catch (const ConfigurationError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace cka::cli
