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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cka/bits.hpp"
#include "cka/protocol/rounds.hpp"

namespace cka::protocol {

enum class Scheduling : std::uint8_t { per_round, per_run };

std::string to_string(Scheduling scheduling);
Scheduling parse_scheduling(std::string_view text);

struct ProtocolParams {
    Configuration config = Configuration::X2;
    /// Probability that a round (or run) is a verification round.
    double p = 0.1;
    std::uint64_t total_rounds = 1000;
    Scheduling scheduling = Scheduling::per_round;
    /// Rounds per run; only read for per_run scheduling.
    std::uint64_t run_length = 1;
    std::uint64_t seed = 0;

    void validate() const;
    bool operator==(const ProtocolParams&) const = default;
};

struct ProtocolTranscript {
    ProtocolParams params;
    quantum::NoiseModel noise;
    std::vector<RoundRecord> rounds;
    BitVec key_a, key_b, key_c;
    std::uint64_t num_keygen = 0;
    std::uint64_t num_verif = 0;

    bool operator==(const ProtocolTranscript&) const = default;
};

/// Runs total_rounds rounds on the lab cluster state. Round types are drawn
/// from a stream derived from the seed; outcomes from a second one, so both
/// scheduling modes see identical measurement randomness.
ProtocolTranscript run_protocol(const ProtocolParams& params, const quantum::NoiseModel& noise);

struct ErrorEstimate {
    std::uint64_t num_keygen = 0;
    std::uint64_t num_verif = 0;
    double q_keygen = 0, q_keygen_ab = 0, q_keygen_ac = 0, q_verif = 0;
    /// Bob-Charlie disagreement; auxiliary, not used by the key rate.
    double q_keygen_bc = 0;
    double se_keygen = 0, se_keygen_ab = 0, se_keygen_ac = 0, se_verif = 0, se_keygen_bc = 0;

    double q_keygen_max() const { return q_keygen_ab > q_keygen_ac ? q_keygen_ab : q_keygen_ac; }
    double se_keygen_max() const { return q_keygen_ab > q_keygen_ac ? se_keygen_ab : se_keygen_ac; }
};

/// Binomial standard error sqrt(q (1 - q) / m).
double binomial_std_error(double q, std::uint64_t m);

/// Throws EstimationError unless the transcript has rounds of both types.
ErrorEstimate estimate_errors(const ProtocolTranscript& transcript);

/// What one party sees: its own bases and outcomes plus the public broadcast.
/// The configuration and other parties' outcomes are not part of it.
struct PartyRound {
    RoundType round_type;
    quantum::PauliBasis basis;
    int outcome;
    /// The non-participant's broadcast (key generation rounds), 0 otherwise.
    int broadcast;
};

struct PartyView {
    int qubit = 0;
    std::vector<PartyRound> rounds;
};

PartyView anonymized_view(const ProtocolTranscript& transcript, int qubit);

/// Line-oriented text: '#'-prefixed key=value header, then one line per round
/// `index,type,o1,o2,o3,o4,np,a,b,c,success` with '-' for absent key bits.
void write_transcript(std::ostream& out, const ProtocolTranscript& transcript);
ProtocolTranscript read_transcript(std::istream& in);

}  // namespace cka::protocol
