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

// Acceptance suite: one PASS/FAIL line per criterion, plus indented notes.
// Exit status is the number of failed criteria.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cka/cli/commands.hpp"
#include "cka/io/pbm.hpp"
#include "cka/keyrate/keyrate.hpp"
#include "cka/postprocess/reconcile.hpp"
#include "cka/protocol/noise_fit.hpp"
#include "cka/protocol/session.hpp"

using namespace cka;
namespace fs = std::filesystem;

namespace {

// Reported values used as targets.
constexpr double kQVerif = 0.112;
constexpr double kQVerifSigma = 0.018;
constexpr double kQKeygenMax = 0.0959;
constexpr double kKeygenSuccess = 0.8776;
constexpr double kKeygenSuccessSigma = 0.0054;
constexpr double kVerifSuccess = 0.8701;
constexpr double kVerifSuccessSigma = 0.0055;

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename... Args>
void note(const char* fmt, Args... args) {
    std::printf("       ");
    std::printf(fmt, args...);
    std::printf("\n");
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double fitted_visibility() {
    using namespace protocol;
    const std::vector<FitTarget> targets{
        {Configuration::X2, RoundType::KeyGen, Observable::success_rate, kKeygenSuccess, kKeygenSuccessSigma},
        {Configuration::X2, RoundType::Verification, Observable::success_rate, kVerifSuccess, kVerifSuccessSigma}};
    return fit_visibility(targets);
}

void criterion_entropy() {
    const double h1 = keyrate::binary_entropy(kQVerif);
    const double h2 = keyrate::binary_entropy(kQKeygenMax);
    const bool ok = std::abs(h1 - 0.507) <= 0.001 && std::abs(h2 - 0.456) <= 0.001;
    verdict(1, ok, fmt("h(0.112) = %.5f (target 0.507), h(0.0959) = %.5f (target 0.456), tol 0.001", h1, h2));
    note("h(33/294) = %.5f; 33 of 294 verification failures is the unrounded 11.2%%",
         keyrate::binary_entropy(33.0 / 294));
}

void criterion_akr() {
    const double akr = keyrate::asymptotic_key_rate(kQVerif, kQKeygenMax);
    verdict(2, std::abs(akr - 0.0375) <= 0.002, fmt("AKR(0.112, 0.0959) = %.5f (target 0.0375 +- 0.002)", akr));
}

void criterion_ideal() {
    using namespace protocol;
    const auto lab = quantum::build_lab_cluster();
    bool ok = true;
    Rng rng(derive_seed(2026, 3));
    std::string detail;
    for (auto c : kAllConfigurations)
        for (auto t : {RoundType::KeyGen, RoundType::Verification}) {
            const auto rule = derive_correction_rule(lab, c, t);
            int wins = 0;
            for (int i = 0; i < 10000; ++i) wins += run_round(lab, c, t, rule, quantum::NoiseModel::ideal(), rng).success;
            if (wins != 10000) {
                ok = false;
                detail += " " + to_string(c) + "/" + to_string(t) + "=" + std::to_string(wins);
            }
        }
    verdict(3, ok, "8 settings x 1e4 noiseless rounds all succeed" + detail);
}

double run_success(protocol::Configuration config, protocol::RoundType type, double v, int rounds, std::uint64_t seed) {
    using namespace protocol;
    const auto lab = quantum::build_lab_cluster();
    const auto rule = derive_correction_rule(lab, config, type);
    const quantum::OutcomeSampler sampler(lab, settings_for(config, type), quantum::NoiseModel::white(v));
    Rng rng(seed);
    int wins = 0;
    for (int i = 0; i < rounds; ++i) wins += evaluate_round(rule, sampler.sample(rng)).success;
    return static_cast<double>(wins) / rounds;
}

void criterion_fitted_rates() {
    using namespace protocol;
    constexpr int kRounds = 100000;
    const double v_keygen = 2 * kKeygenSuccess - 1;
    const double v_verif = 2 * kVerifSuccess - 1;
    const double keygen = run_success(Configuration::X2, RoundType::KeyGen, v_keygen, kRounds, 41);
    const double verif = run_success(Configuration::X2, RoundType::Verification, v_verif, kRounds, 42);
    const double sk = binomial_std_error(kKeygenSuccess, kRounds);
    const double sv = binomial_std_error(kVerifSuccess, kRounds);
    const bool ok = std::abs(keygen - kKeygenSuccess) <= 3 * sk && std::abs(verif - kVerifSuccess) <= 3 * sv;
    verdict(4, ok,
            fmt("v = 2*0.8776-1: keygen success %.4f (target 0.8776 +- %.4f); v = 2*0.8701-1: verification %.4f "
                "(target 0.8701 +- %.4f)",
                keygen, 3 * sk, verif, 3 * sv));

    const auto line = observable_line(Configuration::X2, RoundType::KeyGen, Observable::success_rate);
    const double v_model = (kKeygenSuccess - line.at_uniform) / (line.at_ideal - line.at_uniform);
    const double keygen_model = run_success(Configuration::X2, RoundType::KeyGen, v_model, kRounds, 43);
    note("%s", "simulated key generation succeeds with (1+3v)/4 under white noise, not (1+v)/2");
    note("v fitted to that law = %.4f: keygen success %.4f, |dev| %s 3 sigma", v_model, keygen_model,
         std::abs(keygen_model - kKeygenSuccess) <= 3 * sk ? "within" : "outside");
}

void criterion_q_estimation() {
    using namespace protocol;
    const double v = fitted_visibility();
    ProtocolParams params;
    params.config = Configuration::X2;
    params.p = 0.02;
    params.total_rounds = 11108;
    params.seed = 11108;
    const auto e = estimate_errors(run_protocol(params, quantum::NoiseModel::white(v)));
    const bool verif_ok = std::abs(e.q_verif - kQVerif) <= 3 * kQVerifSigma;
    const bool keygen_ok = std::abs(e.q_keygen_max() - kQKeygenMax) <= 3 * e.se_keygen_max();
    verdict(5, verif_ok && keygen_ok,
            fmt("v = %.4f, Q_verif = %.4f (band 0.112 +- 0.054), Q_keygen_max = %.4f (band 0.0959 +- %.4f)", v,
                e.q_verif, e.q_keygen_max(), 3 * e.se_keygen_max()));
    note("rounds: %llu key generation, %llu verification", static_cast<unsigned long long>(e.num_keygen),
         static_cast<unsigned long long>(e.num_verif));
}

BitVec bsc_key(Rng& rng, std::size_t n, double p) {
    BitVec b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, bernoulli(rng, p));
    return b;
}

void criterion_table() {
    using postprocess::CodeRate;
    constexpr std::size_t kKeyBits = 41033;
    Rng rng(derive_seed(41033, 6));
    const BitVec key_a = bsc_key(rng, kKeyBits, 0.5);
    const BitVec key_b = key_a ^ bsc_key(rng, kKeyBits, 0.1037);
    const BitVec key_c = key_a ^ bsc_key(rng, kKeyBits, 0.0967);
    const double raw_b = static_cast<double>(hamming_distance(key_a, key_b)) / kKeyBits;
    const double raw_c = static_cast<double>(hamming_distance(key_a, key_c)) / kKeyBits;

    std::map<std::string, std::pair<double, double>> residual;
    std::vector<std::string> details;
    for (auto rate : {CodeRate::half(), CodeRate::three_fifths(), CodeRate::two_thirds()}) {
        const auto h = postprocess::build_code(16200, rate, postprocess::kDefaultCodeSeed);
        const auto rb = postprocess::reconcile_keys(key_a, key_b, h, raw_b);
        const auto rc = postprocess::reconcile_keys(key_a, key_c, h, raw_c);
        residual[rate.to_string()] = {rb.residual_error_rate, rc.residual_error_rate};
        char line[160];
        std::snprintf(line, sizeof line, "r = %s: failed blocks %zu / %zu of %zu", rate.to_string().c_str(),
                      rb.failed_blocks, rc.failed_blocks, rb.blocks);
        details.emplace_back(line);
    }
    auto near_raw = [](double residual, double raw) { return residual >= 0.75 * raw && residual <= 1.25 * raw; };
    const auto [h_b, h_c] = residual["1/2"];
    const auto [f_b, f_c] = residual["3/5"];
    const auto [t_b, t_c] = residual["2/3"];
    const bool ok = h_b == 0 && h_c == 0 && f_c == 0 && f_b > 0 && near_raw(t_b, raw_b) && near_raw(t_c, raw_c);
    verdict(6, ok,
            fmt("raw %.2f%% / %.2f%%; 1/2 -> %.2f%% / %.2f%%", 100 * raw_b, 100 * raw_c, 100 * h_b, 100 * h_c) +
                fmt("; 3/5 -> %.2f%% / %.2f%%; 2/3 -> %.2f%% / %.2f%% (near raw: within 25%%)", 100 * f_b,
                    100 * f_c, 100 * t_b, 100 * t_c));
    for (const auto& d : details) note("%s", d.c_str());
}

void criterion_syndrome() {
    using postprocess::CodeRate;
    Rng rng(derive_seed(7, 7));
    int blocks = 0, bad = 0;
    for (auto rate : {CodeRate::half(), CodeRate::three_fifths(), CodeRate::two_thirds()}) {
        const auto h = postprocess::build_code(16200, rate, postprocess::kDefaultCodeSeed);
        // Dense packed rows built from the full row lists.
        const std::size_t words = (h.n() + 63) / 64;
        std::vector<std::uint64_t> dense(static_cast<std::size_t>(h.num_checks()) * words);
        for (std::uint32_t i = 0; i < h.num_checks(); ++i)
            for (auto c : h.full_row(i)) dense[i * words + c / 64] ^= std::uint64_t{1} << (c % 64);
        for (int t = 0; t < 34 && blocks < 100; ++t, ++blocks) {
            BitVec word = bsc_key(rng, h.k(), 0.5);
            word.append(postprocess::encode_syndrome(word, h));
            const auto w = word.words();
            for (std::uint32_t i = 0; i < h.num_checks(); ++i) {
                unsigned parity = 0;
                for (std::size_t k = 0; k < words; ++k) parity ^= std::popcount(dense[i * words + k] & w[k]) & 1U;
                if (parity != 0) {
                    ++bad;
                    break;
                }
            }
        }
    }
    verdict(7, bad == 0 && blocks == 100,
            fmt("%.0f random blocks over rates 1/2, 3/5, 2/3; %.0f with a nonzero dense syndrome", blocks, bad));
}

void criterion_fkr() {
    const auto grid = keyrate::log_space(1e4, 1e12, 33);
    bool fkr_monotone = true, p_monotone = true;
    double prev_fkr = -INFINITY, prev_p = INFINITY;
    for (double l : grid) {
        const auto o = keyrate::optimize_p(kQVerif, kQKeygenMax, std::floor(l));
        if (o.fkr < prev_fkr - 1e-12) fkr_monotone = false;
        if (o.p > prev_p * (1 + 1e-9)) p_monotone = false;
        prev_fkr = o.fkr;
        prev_p = o.p;
    }
    const double akr = keyrate::asymptotic_key_rate(kQVerif, kQKeygenMax);
    const auto top = keyrate::optimize_p(kQVerif, kQKeygenMax, 1e12);
    const auto lmin = keyrate::min_length_positive(kQVerif, kQKeygenMax);
    const bool gap_ok = std::abs(top.fkr - akr) < 1e-3;
    const bool lmin_ok = lmin && lmin->total_rounds >= 1e7 && lmin->total_rounds <= 1e10;
    verdict(8, fkr_monotone && p_monotone && gap_ok && lmin_ok,
            std::string("(a) fkr* non-decreasing ") + (fkr_monotone ? "yes" : "no") + ", (b) p* non-increasing " +
                (p_monotone ? "yes" : "no") + fmt(", (c) |fkr*(1e12) - AKR| = %.2e, (d) L_min = %.3e", std::abs(top.fkr - akr),
                                                  lmin ? lmin->total_rounds : NAN) +
                " (range [1e7, 1e10])");
    note("sub-checks: a=%s b=%s c=%s d=%s", fkr_monotone ? "pass" : "fail", p_monotone ? "pass" : "fail",
         gap_ok ? "pass" : "fail", lmin_ok ? "pass" : "fail");
    if (lmin) note("p at L_min = %.3g", lmin->p);
    note("FKR(L=1e12, p=1e-4) - AKR = %.5f", keyrate::finite_key_rate({kQVerif, kQKeygenMax, 1e12, 1e-4, 1e-5}) - akr);
}

void criterion_demo() {
    cli::RunConfig c;
    c.protocol.p = 0.1;
    c.protocol.total_rounds = 14500;
    c.protocol.seed = 3;
    c.noise = quantum::NoiseModel::white(fitted_visibility());
    const auto image = io::read_pbm_file(CKA_TEST_IMAGE);
    const auto r = cli::demo_pipeline(c, image);
    const bool raw_ok = std::abs(r.pixel_error_raw_b - 10.0) <= 2.0 && std::abs(r.pixel_error_raw_c - 10.0) <= 2.0;
    const bool cor_ok = r.pixel_error_cor_b == 0.0 && r.pixel_error_cor_c == 0.0;
    verdict(9, raw_ok && cor_ok && r.key_bits >= 12288,
            fmt("raw pixel errors %.2f%% / %.2f%% (10 +- 2), corrected %.2f%% / %.2f%%", r.pixel_error_raw_b,
                r.pixel_error_raw_c, r.pixel_error_cor_b, r.pixel_error_cor_c));
    note("key bits %zu for %zu pixels, v = %.4f, crossover %.4f", r.key_bits, r.image_bits,
         c.noise.visibility, r.crossover);
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        files[fs::relative(e.path(), dir).string()] = os.str();
    }
    return files;
}

int invoke(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"cka"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

void criterion_determinism() {
    const fs::path root = fs::temp_directory_path() / "cka_acceptance_determinism";
    const fs::path out = root / "out";
    const std::string o = out.string();
    const std::vector<std::vector<std::string>> commands{
        {"simulate", "--seed", "77", "--p", "0.1", "--rounds", "44827", "--visibility", "0.81", "--out", o},
        {"reconcile", "--out", o},
        {"keyrate", "--out", o},
        {"encrypt", "--image", CKA_TEST_IMAGE, "--key", o + "/key_a.bin", "--output", o + "/enc.pbm"},
        {"decrypt", "--image", o + "/enc.pbm", "--key", o + "/key_b_cor.bin", "--output", o + "/dec.pbm"},
        {"demo", "--image", CKA_TEST_IMAGE, "--seed", "78", "--rounds", "14500", "--visibility", "0.81", "--out",
         o + "/demo"}};
    std::vector<std::map<std::string, std::string>> snaps;
    bool all_ran = true;
    for (int pass = 0; pass < 2; ++pass) {
        fs::remove_all(root);
        fs::create_directories(root);
        for (const auto& cmd : commands) all_ran &= invoke(cmd) == 0;
        snaps.push_back(snapshot(out));
    }
    fs::remove_all(root);
    const bool ok = all_ran && snaps[0] == snaps[1];
    verdict(10, ok, fmt("6 subcommands run twice, %.0f output files, byte-identical: ", snaps[0].size()) +
                        (snaps[0] == snaps[1] ? "yes" : "no"));
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const std::vector<void (*)()> criteria{criterion_entropy,    criterion_akr,      criterion_ideal,
                                           criterion_fitted_rates, criterion_q_estimation, criterion_table,
                                           criterion_syndrome,   criterion_fkr,      criterion_demo,
                                           criterion_determinism};
    for (auto run : criteria) {
        try {
            run();
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion raised: %s\n", e.what());
            ++failures;
        }
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    std::printf("%d of %zu criteria failed (%.1f s)\n", failures, criteria.size(), secs);
    return failures;
}
