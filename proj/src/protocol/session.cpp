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

#include "cka/protocol/session.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "cka/error.hpp"

namespace cka::protocol {

namespace {

constexpr std::uint64_t kScheduleStream = 1;
constexpr std::uint64_t kMeasurementStream = 2;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw IoError(std::string("malformed ") + what + " '" + text + "' in transcript");
    }
    return value;
}

double parse_real(const std::string& text, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw IoError(std::string("malformed ") + what + " '" + text + "' in transcript");
    }
    return v;
}

int parse_sign(const std::string& text) {
    if (text == "+1") return 1;
    if (text == "-1") return -1;
    throw IoError("malformed outcome '" + text + "' in transcript");
}

}  // namespace

std::string to_string(Scheduling scheduling) { return scheduling == Scheduling::per_round ? "per_round" : "per_run"; }

Scheduling parse_scheduling(std::string_view text) {
    if (text == "per_round") return Scheduling::per_round;
    if (text == "per_run") return Scheduling::per_run;
    throw ContractError("unknown scheduling '" + std::string(text) + "'");
}

void ProtocolParams::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw ContractError("verification fraction p must lie in (0, 1)");
    if (total_rounds < 1) throw ContractError("total rounds must be at least 1");
    if (scheduling == Scheduling::per_run && run_length < 1) throw ContractError("run length must be at least 1");
}

ProtocolTranscript run_protocol(const ProtocolParams& params, const quantum::NoiseModel& noise) {
    params.validate();
    const quantum::StateVector state = quantum::build_lab_cluster();
    const CorrectionRule keygen_rule = derive_correction_rule(state, params.config, RoundType::KeyGen);
    const CorrectionRule verif_rule = derive_correction_rule(state, params.config, RoundType::Verification);
    const quantum::OutcomeSampler keygen_sampler(state, settings_for(params.config, RoundType::KeyGen), noise);
    const quantum::OutcomeSampler verif_sampler(state, settings_for(params.config, RoundType::Verification), noise);

    Rng schedule_rng(derive_seed(params.seed, kScheduleStream));
    Rng measure_rng(derive_seed(params.seed, kMeasurementStream));

    ProtocolTranscript t;
    t.params = params;
    t.noise = noise;
    t.rounds.reserve(params.total_rounds);

    RoundType current = RoundType::KeyGen;
    for (std::uint64_t i = 0; i < params.total_rounds; ++i) {
        const bool new_block = params.scheduling == Scheduling::per_round || i % params.run_length == 0;
        if (new_block) current = bernoulli(schedule_rng, params.p) ? RoundType::Verification : RoundType::KeyGen;

        if (current == RoundType::KeyGen) {
            RoundRecord rec = evaluate_round(keygen_rule, keygen_sampler.sample(measure_rng));
            const auto& bits = *rec.key_bits;
            t.key_a.push_back(bits[0] != 0);
            t.key_b.push_back(bits[1] != 0);
            t.key_c.push_back(bits[2] != 0);
            ++t.num_keygen;
            t.rounds.push_back(std::move(rec));
        } else {
            t.rounds.push_back(evaluate_round(verif_rule, verif_sampler.sample(measure_rng)));
            ++t.num_verif;
        }
    }
    return t;
}

double binomial_std_error(double q, std::uint64_t m) {
    if (m == 0) return 0.0;
    return std::sqrt(q * (1.0 - q) / static_cast<double>(m));
}

ErrorEstimate estimate_errors(const ProtocolTranscript& transcript) {
    ErrorEstimate e;
    std::uint64_t keygen_fail = 0;
    std::uint64_t verif_fail = 0;
    for (const auto& r : transcript.rounds) {
        if (r.round_type == RoundType::KeyGen) {
            ++e.num_keygen;
            if (!r.success) ++keygen_fail;
        } else {
            ++e.num_verif;
            if (!r.success) ++verif_fail;
        }
    }
    if (e.num_keygen == 0) throw EstimationError("transcript has no key generation rounds");
    if (e.num_verif == 0) throw EstimationError("transcript has no verification rounds");

    const auto m = static_cast<double>(e.num_keygen);
    e.q_keygen = static_cast<double>(keygen_fail) / m;
    e.q_keygen_ab = static_cast<double>(hamming_distance(transcript.key_a, transcript.key_b)) / m;
    e.q_keygen_ac = static_cast<double>(hamming_distance(transcript.key_a, transcript.key_c)) / m;
    e.q_keygen_bc = static_cast<double>(hamming_distance(transcript.key_b, transcript.key_c)) / m;
    e.q_verif = static_cast<double>(verif_fail) / static_cast<double>(e.num_verif);

    e.se_keygen = binomial_std_error(e.q_keygen, e.num_keygen);
    e.se_keygen_ab = binomial_std_error(e.q_keygen_ab, e.num_keygen);
    e.se_keygen_ac = binomial_std_error(e.q_keygen_ac, e.num_keygen);
    e.se_keygen_bc = binomial_std_error(e.q_keygen_bc, e.num_keygen);
    e.se_verif = binomial_std_error(e.q_verif, e.num_verif);
    return e;
}

PartyView anonymized_view(const ProtocolTranscript& transcript, int qubit) {
    if (qubit < 0 || qubit > 3) throw IndexError("party qubit must be in [0, 3]");
    PartyView view;
    view.qubit = qubit;
    view.rounds.reserve(transcript.rounds.size());
    for (const auto& r : transcript.rounds) {
        const Setting s = settings_for(transcript.params.config, r.round_type);
        view.rounds.push_back({r.round_type, s[static_cast<std::size_t>(qubit)],
                               r.raw_outcomes[static_cast<std::size_t>(qubit)],
                               r.round_type == RoundType::KeyGen ? r.np_outcome : 0});
    }
    return view;
}

void write_transcript(std::ostream& out, const ProtocolTranscript& t) {
    const auto& p = t.params;
    out << "# cka-transcript 1\n";
    out << "# configuration=" << to_string(p.config) << '\n';
    out << "# p=" << format_double(p.p) << '\n';
    out << "# rounds=" << p.total_rounds << '\n';
    out << "# scheduling=" << to_string(p.scheduling) << '\n';
    out << "# run_length=" << p.run_length << '\n';
    out << "# seed=" << p.seed << '\n';
    out << "# noise=" << (t.noise.kind == quantum::NoiseKind::ideal ? "ideal" : "global_white_noise") << '\n';
    out << "# visibility=" << format_double(t.noise.visibility) << '\n';
    out << "# num_keygen=" << t.num_keygen << '\n';
    out << "# num_verif=" << t.num_verif << '\n';
    out << "# key_bits=" << t.key_a.size() << '\n';
    std::uint64_t index = 0;
    for (const auto& r : t.rounds) {
        out << index++ << ',' << to_string(r.round_type);
        for (int o : r.raw_outcomes) out << ',' << (o > 0 ? "+1" : "-1");
        out << ',' << (r.np_outcome > 0 ? "+1" : "-1");
        if (r.key_bits) {
            for (auto b : *r.key_bits) out << ',' << static_cast<int>(b);
        } else {
            out << ",-,-,-";
        }
        out << ',' << (r.success ? 1 : 0) << '\n';
    }
}

ProtocolTranscript read_transcript(std::istream& in) {
    ProtocolTranscript t;
    std::map<std::string, std::string> header;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) header[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 11) throw IoError("transcript record must have 11 fields: " + line);
        RoundRecord r;
        r.round_type = parse_round_type(f[1]);
        for (int q = 0; q < 4; ++q) r.raw_outcomes.push_back(parse_sign(f[2 + static_cast<std::size_t>(q)]));
        r.np_outcome = parse_sign(f[6]);
        if (r.round_type == RoundType::KeyGen) {
            std::array<std::uint8_t, 3> bits{};
            for (std::size_t k = 0; k < 3; ++k) bits[k] = parse_number<std::uint8_t>(f[7 + k], "key bit");
            r.key_bits = bits;
            t.key_a.push_back(bits[0] != 0);
            t.key_b.push_back(bits[1] != 0);
            t.key_c.push_back(bits[2] != 0);
            ++t.num_keygen;
        } else {
            ++t.num_verif;
        }
        r.success = parse_number<int>(f[10], "success flag") != 0;
        t.rounds.push_back(std::move(r));
    }
    auto get = [&](const char* key) -> const std::string& {
        const auto it = header.find(key);
        if (it == header.end()) throw IoError(std::string("transcript header lacks '") + key + "'");
        return it->second;
    };
    t.params.config = parse_configuration(get("configuration"));
    t.params.p = parse_real(get("p"), "p");
    t.params.total_rounds = parse_number<std::uint64_t>(get("rounds"), "rounds");
    t.params.scheduling = parse_scheduling(get("scheduling"));
    t.params.run_length = parse_number<std::uint64_t>(get("run_length"), "run_length");
    t.params.seed = parse_number<std::uint64_t>(get("seed"), "seed");
    t.noise.kind = get("noise") == "ideal" ? quantum::NoiseKind::ideal : quantum::NoiseKind::global_white_noise;
    t.noise.visibility = parse_real(get("visibility"), "visibility");
    if (t.rounds.size() != t.params.total_rounds) throw IoError("transcript round count does not match header");
    return t;
}

}  // namespace cka::protocol
