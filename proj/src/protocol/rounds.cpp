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

#include "cka/protocol/rounds.hpp"

#include <bit>
#include <cctype>

#include "cka/error.hpp"

namespace cka::protocol {

namespace {

using quantum::PauliBasis;

constexpr double kSupportThreshold = 1e-12;

std::string lower(std::string_view text) {
    std::string out(text);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

int outcome_of(const quantum::OutcomeVector& outcomes, int qubit) { return outcomes[static_cast<std::size_t>(qubit)]; }

std::uint8_t bit_of(int eigenvalue) { return eigenvalue < 0 ? 1 : 0; }

int np_slot(int np_outcome) { return np_outcome > 0 ? 0 : 1; }

}  // namespace

std::string to_string(Configuration config) {
    switch (config) {
        case Configuration::X2: return "x2";
        case Configuration::Y2: return "y2";
        case Configuration::X3: return "x3";
        case Configuration::Y3: return "y3";
    }
    return "?";
}

Configuration parse_configuration(std::string_view text) {
    const std::string t = lower(text);
    if (t == "x2") return Configuration::X2;
    if (t == "y2") return Configuration::Y2;
    if (t == "x3") return Configuration::X3;
    if (t == "y3") return Configuration::Y3;
    throw ContractError("unknown configuration '" + std::string(text) + "' (expected x2, y2, x3 or y3)");
}

std::string to_string(RoundType type) { return type == RoundType::KeyGen ? "keygen" : "verif"; }

RoundType parse_round_type(std::string_view text) {
    if (text == "keygen") return RoundType::KeyGen;
    if (text == "verif") return RoundType::Verification;
    throw ContractError("unknown round type '" + std::string(text) + "'");
}

Roles roles_for(Configuration config) {
    const bool second_sits_out = config == Configuration::X2 || config == Configuration::Y2;
    Roles roles;
    roles.non_participant = second_sits_out ? 1 : 2;
    roles.bob = second_sits_out ? 2 : 1;
    return roles;
}

Setting settings_for(Configuration config, RoundType type) {
    constexpr auto X = PauliBasis::X;
    constexpr auto Y = PauliBasis::Y;
    constexpr auto Z = PauliBasis::Z;
    const bool keygen = type == RoundType::KeyGen;
    switch (config) {
        case Configuration::X2: return keygen ? Setting{X, X, Z, Z} : Setting{Z, X, X, X};
        case Configuration::Y2: return keygen ? Setting{Y, Y, Z, Z} : Setting{Z, Y, X, X};
        case Configuration::X3: return keygen ? Setting{Z, Z, X, X} : Setting{X, X, X, Z};
        case Configuration::Y3: return keygen ? Setting{Z, Z, Y, Y} : Setting{X, X, Y, Z};
    }
    throw ContractError("unknown configuration");
}

CorrectionRule derive_correction_rule(const quantum::StateVector& ideal, Configuration config, RoundType type) {
    if (ideal.num_qubits() != 4) throw ContractError("correction rules are defined for four-qubit states");
    const Setting setting = settings_for(config, type);
    const auto dist = quantum::outcome_distribution(ideal, setting);

    CorrectionRule rule;
    rule.config = config;
    rule.type = type;
    rule.roles = roles_for(config);
    const Roles& r = rule.roles;

    if (type == RoundType::KeyGen) {
        std::array<bool, 2> seen{false, false};
        for (std::size_t idx = 0; idx < dist.size(); ++idx) {
            if (dist[idx] <= kSupportThreshold) continue;
            const auto o = quantum::outcome_from_index(idx, 4);
            const int slot = np_slot(outcome_of(o, r.non_participant));
            const int ab = outcome_of(o, r.alice) * outcome_of(o, r.bob);
            const int ac = outcome_of(o, r.alice) * outcome_of(o, r.charlie);
            if (!seen[static_cast<std::size_t>(slot)]) {
                seen[static_cast<std::size_t>(slot)] = true;
                rule.sign_ab[static_cast<std::size_t>(slot)] = ab;
                rule.sign_ac[static_cast<std::size_t>(slot)] = ac;
            } else if (rule.sign_ab[static_cast<std::size_t>(slot)] != ab ||
                       rule.sign_ac[static_cast<std::size_t>(slot)] != ac) {
                throw ModelError("no deterministic key correlation for configuration " + to_string(config));
            }
        }
        if (!seen[0] || !seen[1]) {
            throw ModelError("non-participant outcome is deterministic for configuration " + to_string(config));
        }
        return rule;
    }

    // Smallest qubit subset whose outcome product is constant on the support.
    for (int weight = 1; weight <= 4; ++weight) {
        for (unsigned mask = 1; mask < 16; ++mask) {
            if (std::popcount(mask) != weight) continue;
            int sign = 0;
            bool constant = true;
            for (std::size_t idx = 0; idx < dist.size() && constant; ++idx) {
                if (dist[idx] <= kSupportThreshold) continue;
                const int parity = std::popcount(static_cast<unsigned>(idx) & mask) & 1;
                const int product = parity ? -1 : 1;
                if (sign == 0) {
                    sign = product;
                } else if (sign != product) {
                    constant = false;
                }
            }
            if (constant && sign != 0) {
                rule.check_mask = mask;
                rule.check_sign = sign;
                return rule;
            }
        }
    }
    throw ModelError("no stabilizer check found for verification in configuration " + to_string(config));
}

CorrectionRule derive_correction_rule(Configuration config, RoundType type) {
    static const quantum::StateVector lab = quantum::build_lab_cluster();
    return derive_correction_rule(lab, config, type);
}

RoundRecord evaluate_round(const CorrectionRule& rule, const quantum::OutcomeVector& outcomes) {
    if (outcomes.size() != 4) throw ContractError("round outcome must have four entries");
    const Roles& r = rule.roles;
    RoundRecord rec;
    rec.round_type = rule.type;
    rec.raw_outcomes = outcomes;
    rec.np_outcome = outcome_of(outcomes, r.non_participant);
    if (rule.type == RoundType::KeyGen) {
        const auto slot = static_cast<std::size_t>(np_slot(rec.np_outcome));
        const std::uint8_t a = bit_of(outcome_of(outcomes, r.alice));
        const std::uint8_t b = bit_of(outcome_of(outcomes, r.bob)) ^ static_cast<std::uint8_t>(rule.sign_ab[slot] < 0);
        const std::uint8_t c =
            bit_of(outcome_of(outcomes, r.charlie)) ^ static_cast<std::uint8_t>(rule.sign_ac[slot] < 0);
        rec.key_bits = std::array<std::uint8_t, 3>{a, b, c};
        rec.success = a == b && a == c;
    } else {
        const unsigned idx = static_cast<unsigned>(quantum::outcome_index(outcomes));
        const int product = (std::popcount(idx & rule.check_mask) & 1) ? -1 : 1;
        rec.success = product == rule.check_sign;
    }
    return rec;
}

RoundRecord run_round(const quantum::StateVector& state, Configuration config, RoundType type,
                      const CorrectionRule& rule, const quantum::NoiseModel& noise, Rng& rng) {
    if (rule.config != config || rule.type != type) {
        throw ContractError("correction rule was derived for a different configuration or round type");
    }
    const Setting setting = settings_for(config, type);
    return evaluate_round(rule, quantum::sample_outcomes(state, setting, noise, rng));
}

double success_probability(const CorrectionRule& rule, std::span<const double> distribution) {
    if (distribution.size() != 16) throw ContractError("expected a 16-entry outcome distribution");
    double total = 0.0;
    for (std::size_t idx = 0; idx < distribution.size(); ++idx) {
        if (evaluate_round(rule, quantum::outcome_from_index(idx, 4)).success) total += distribution[idx];
    }
    return total;
}

}  // namespace cka::protocol
