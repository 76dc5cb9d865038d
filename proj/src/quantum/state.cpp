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

#include "cka/quantum/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cka/error.hpp"

namespace cka::quantum {

namespace {

constexpr double kNormTolerance = 1e-12;

void check_qubit(const StateVector& state, int q) {
    if (q < 0 || q >= state.num_qubits()) {
        throw IndexError("qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(state.num_qubits()) + "-qubit state");
    }
}

std::size_t mask_of(int num_qubits, int q) { return std::size_t{1} << (num_qubits - 1 - q); }

// Applies the 2x2 unitary [[a, b], [c, d]] to qubit q.
std::vector<Amplitude> apply_single(std::span<const Amplitude> in, int num_qubits, int q, Amplitude a, Amplitude b,
                                    Amplitude c, Amplitude d) {
    std::vector<Amplitude> out(in.begin(), in.end());
    const std::size_t mask = mask_of(num_qubits, q);
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        if (idx & mask) continue;
        const Amplitude zero = in[idx];
        const Amplitude one = in[idx | mask];
        out[idx] = a * zero + b * one;
        out[idx | mask] = c * zero + d * one;
    }
    return out;
}

void check_setting(const StateVector& state, std::span<const PauliBasis> setting) {
    if (setting.size() != static_cast<std::size_t>(state.num_qubits())) {
        throw ContractError("measurement setting has " + std::to_string(setting.size()) + " bases for a " +
                            std::to_string(state.num_qubits()) + "-qubit state");
    }
}

}  // namespace

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw SizeError("qubit count " + std::to_string(num_qubits) + " outside [1, " + std::to_string(kMaxQubits) +
                        "]");
    }
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw SizeError("amplitude array length does not equal 2^num_qubits");
    }
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
        throw ContractError("state is not normalized");
    }
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
}

std::size_t StateVector::index_of(std::string_view ket) {
    std::size_t idx = 0;
    for (char c : ket) {
        if (c != '0' && c != '1') throw ContractError("ket label must consist of 0 and 1");
        idx = (idx << 1) | static_cast<std::size_t>(c == '1');
    }
    return idx;
}

char to_char(PauliBasis basis) {
    switch (basis) {
        case PauliBasis::X: return 'X';
        case PauliBasis::Y: return 'Y';
        case PauliBasis::Z: return 'Z';
    }
    return '?';
}

PauliBasis basis_from_char(char c) {
    switch (c) {
        case 'X': case 'x': return PauliBasis::X;
        case 'Y': case 'y': return PauliBasis::Y;
        case 'Z': case 'z': return PauliBasis::Z;
        default: throw ContractError(std::string("unknown Pauli basis '") + c + "'");
    }
}

std::vector<PauliBasis> parse_setting(std::string_view text) {
    std::vector<PauliBasis> out;
    out.reserve(text.size());
    for (char c : text) out.push_back(basis_from_char(c));
    return out;
}

std::string to_string(std::span<const PauliBasis> setting) {
    std::string out;
    for (auto b : setting) out.push_back(to_char(b));
    return out;
}

NoiseModel NoiseModel::white(double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) throw ContractError("visibility must lie in [0, 1]");
    return {NoiseKind::global_white_noise, visibility};
}

std::size_t outcome_index(std::span<const int> outcome) {
    std::size_t idx = 0;
    for (int v : outcome) idx = (idx << 1) | static_cast<std::size_t>(v < 0);
    return idx;
}

OutcomeVector outcome_from_index(std::size_t index, int num_qubits) {
    OutcomeVector out(static_cast<std::size_t>(num_qubits));
    for (int q = 0; q < num_qubits; ++q) out[static_cast<std::size_t>(q)] = (index & mask_of(num_qubits, q)) ? -1 : 1;
    return out;
}

StateVector build_plus_state(int n) {
    if (n < 1 || n > kMaxQubits) throw SizeError("qubit count " + std::to_string(n) + " outside [1, 12]");
    const std::size_t dim = std::size_t{1} << n;
    return StateVector(n, std::vector<Amplitude>(dim, Amplitude(std::pow(2.0, -0.5 * n), 0.0)));
}

StateVector apply_cz(const StateVector& state, int i, int j) {
    check_qubit(state, i);
    check_qubit(state, j);
    if (i == j) throw IndexError("CZ needs two distinct qubits");
    const std::size_t both = mask_of(state.num_qubits(), i) | mask_of(state.num_qubits(), j);
    std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        if ((idx & both) == both) out[idx] = -out[idx];
    }
    return StateVector(state.num_qubits(), std::move(out));
}

StateVector apply_local_gate(const StateVector& state, LocalGate gate, int qubit) {
    check_qubit(state, qubit);
    const double s = 1.0 / std::sqrt(2.0);
    switch (gate) {
        case LocalGate::H:
            return StateVector(state.num_qubits(), apply_single(state.amplitudes(), state.num_qubits(), qubit, s, s, s, -s));
        case LocalGate::X:
            return StateVector(state.num_qubits(), apply_single(state.amplitudes(), state.num_qubits(), qubit, 0, 1, 1, 0));
    }
    throw ContractError("unknown local gate");
}

StateVector build_linear_cluster(int n) {
    if (n < 2 || n > kMaxQubits) throw SizeError("linear cluster needs between 2 and 12 qubits");
    StateVector state = build_plus_state(n);
    for (int q = 0; q + 1 < n; ++q) state = apply_cz(state, q, q + 1);
    return state;
}

StateVector build_lab_cluster() {
    StateVector state = build_linear_cluster(4);
    state = apply_local_gate(state, LocalGate::H, 3);
    state = apply_local_gate(state, LocalGate::X, 2);
    state = apply_local_gate(state, LocalGate::X, 1);
    return apply_local_gate(state, LocalGate::H, 0);
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
    if (a.num_qubits() != b.num_qubits()) return false;
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    const auto pivot = std::find_if(aa.begin(), aa.end(), [tol](Amplitude x) { return std::abs(x) > tol; });
    if (pivot == aa.end()) return false;
    const std::size_t k = static_cast<std::size_t>(pivot - aa.begin());
    if (std::abs(bb[k]) <= tol) return false;
    const Amplitude phase = (aa[k] / std::abs(aa[k])) / (bb[k] / std::abs(bb[k]));
    for (std::size_t idx = 0; idx < aa.size(); ++idx) {
        if (std::abs(aa[idx] - phase * bb[idx]) > tol) return false;
    }
    return true;
}

std::vector<double> outcome_distribution(const StateVector& state, std::span<const PauliBasis> setting) {
    check_setting(state, setting);
    const int n = state.num_qubits();
    const double s = 1.0 / std::sqrt(2.0);
    const Amplitude i_unit(0.0, 1.0);
    std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    // Rotate each measured eigenbasis onto the computational basis. The rows
    // are the conjugated first/second eigenvectors, so outcome +1 maps to |0>.
    for (int q = 0; q < n; ++q) {
        switch (setting[static_cast<std::size_t>(q)]) {
            case PauliBasis::X: amps = apply_single(amps, n, q, s, s, s, -s); break;
            case PauliBasis::Y: amps = apply_single(amps, n, q, s, -i_unit * s, s, i_unit * s); break;
            case PauliBasis::Z: break;
        }
    }
    std::vector<double> probs(amps.size());
    std::transform(amps.begin(), amps.end(), probs.begin(), [](Amplitude x) { return std::norm(x); });
    return probs;
}

OutcomeVector sample_outcomes(const StateVector& state, std::span<const PauliBasis> setting, const NoiseModel& noise,
                              Rng& rng) {
    return OutcomeSampler(state, setting, noise).sample(rng);
}

OutcomeSampler::OutcomeSampler(const StateVector& state, std::span<const PauliBasis> setting, const NoiseModel& noise)
    : num_qubits_(state.num_qubits()),
      visibility_(noise.effective_visibility()),
      probabilities_(outcome_distribution(state, setting)),
      cumulative_(probabilities_.size()) {
    std::partial_sum(probabilities_.begin(), probabilities_.end(), cumulative_.begin());
}

std::size_t OutcomeSampler::sample_index(Rng& rng) const {
    // Both draws happen every round so that the stream position does not
    // depend on which branch of the mixture was taken.
    const double branch = uniform01(rng);
    const double u = uniform01(rng);
    if (branch >= visibility_) {
        return std::min(static_cast<std::size_t>(u * static_cast<double>(cumulative_.size())), cumulative_.size() - 1);
    }
    const double target = u * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(idx, cumulative_.size() - 1);
}

OutcomeVector OutcomeSampler::sample(Rng& rng) const { return outcome_from_index(sample_index(rng), num_qubits_); }

}  // namespace cka::quantum
