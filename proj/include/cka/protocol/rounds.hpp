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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cka/bits.hpp"
#include "cka/quantum/state.hpp"

namespace cka::protocol {

/// Which party sits out and how it disentangles: the letter is the basis of
/// its measurement, the digit its (one-based) qubit.
enum class Configuration : std::uint8_t { X2, Y2, X3, Y3 };

inline constexpr std::array<Configuration, 4> kAllConfigurations{Configuration::X2, Configuration::Y2,
                                                                 Configuration::X3, Configuration::Y3};

std::string to_string(Configuration config);
/// Accepts "x2", "X2", ...
Configuration parse_configuration(std::string_view text);

enum class RoundType : std::uint8_t { KeyGen, Verification };

std::string to_string(RoundType type);
RoundType parse_round_type(std::string_view text);

/// Qubit roles. Alice holds qubit 0 and Charlie qubit 3; Bob holds whichever
/// of qubits 1 and 2 is not the non-participant.
struct Roles {
    int alice = 0;
    int bob = 0;
    int charlie = 3;
    int non_participant = 0;
};

Roles roles_for(Configuration config);

using Setting = std::array<quantum::PauliBasis, 4>;

/// Measurement bases of all four parties, written for the lab cluster state
/// (see quantum::build_lab_cluster).
Setting settings_for(Configuration config, RoundType type);

/// Conditional bitflips and stabilizer check for one (configuration, round
/// type) pair.
///
/// Key generation: for each broadcast outcome m of the non-participant the
/// ideal state fixes the products a*b and a*c of the participants' outcomes.
/// Bob (Charlie) flips his raw bit whenever that product is -1, so that all
/// three bits agree with Alice's.
///
/// Verification: the product of the outcomes of the qubits in `check_mask`
/// equals `check_sign` on the ideal state.
struct CorrectionRule {
    Configuration config = Configuration::X2;
    RoundType type = RoundType::KeyGen;
    Roles roles;
    /// Indexed by 0 for m = +1 and 1 for m = -1.
    std::array<int, 2> sign_ab{1, 1};
    std::array<int, 2> sign_ac{1, 1};
    /// Bit (3 - q) set when qubit q takes part in the check.
    unsigned check_mask = 0;
    int check_sign = 1;

    bool operator==(const CorrectionRule&) const = default;
};

/// Finds the rule by exhaustive enumeration of the outcome distribution of
/// `ideal`. Throws ModelError when no deterministic relation exists, which
/// means the settings table does not match the state.
CorrectionRule derive_correction_rule(const quantum::StateVector& ideal, Configuration config, RoundType type);
CorrectionRule derive_correction_rule(Configuration config, RoundType type);

struct RoundRecord {
    RoundType round_type = RoundType::KeyGen;
    quantum::OutcomeVector raw_outcomes;
    int np_outcome = 1;
    /// Alice, Bob, Charlie after conditional flips; key generation only.
    std::optional<std::array<std::uint8_t, 3>> key_bits;
    bool success = false;

    bool operator==(const RoundRecord&) const = default;
};

/// Applies a rule to a raw outcome vector.
RoundRecord evaluate_round(const CorrectionRule& rule, const quantum::OutcomeVector& outcomes);

RoundRecord run_round(const quantum::StateVector& state, Configuration config, RoundType type,
                      const CorrectionRule& rule, const quantum::NoiseModel& noise, Rng& rng);

/// Probability that a round succeeds when outcomes follow `distribution`.
double success_probability(const CorrectionRule& rule, std::span<const double> distribution);

}  // namespace cka::protocol
