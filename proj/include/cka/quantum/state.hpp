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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cka/random.hpp"

namespace cka::quantum {

using Amplitude = std::complex<double>;

/// Qubit 0 is the most significant bit of the amplitude index, so the ket
/// |q0 q1 ... q(n-1)> reads left to right.
inline constexpr int kMaxQubits = 12;

class StateVector {
public:
    /// Validates length (2^n, 1 <= n <= kMaxQubits) and unit norm.
    StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    Amplitude amplitude(std::size_t index) const { return amplitudes_.at(index); }
    double norm_squared() const;

    /// Index into the amplitude array for a ket given as a string of 0/1.
    static std::size_t index_of(std::string_view ket);

    /// Exact amplitude equality; see equal_up_to_phase for the physical comparison.
    bool operator==(const StateVector&) const = default;

private:
    int num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

enum class PauliBasis : std::uint8_t { X, Y, Z };

char to_char(PauliBasis basis);
PauliBasis basis_from_char(char c);
/// "XXZZ" -> {X, X, Z, Z}
std::vector<PauliBasis> parse_setting(std::string_view text);
std::string to_string(std::span<const PauliBasis> setting);

enum class LocalGate : std::uint8_t { H, X };

enum class NoiseKind : std::uint8_t { ideal, global_white_noise };

/// Classical mixture of the ideal measurement statistics with the uniform
/// distribution: P = v * P_ideal + (1 - v) / 2^n.
struct NoiseModel {
    NoiseKind kind = NoiseKind::ideal;
    double visibility = 1.0;

    static NoiseModel ideal() { return {}; }
    static NoiseModel white(double visibility);

    double effective_visibility() const { return kind == NoiseKind::ideal ? 1.0 : visibility; }
    bool operator==(const NoiseModel&) const = default;
};

/// Per-qubit eigenvalues, +1 for the first basis state (|+>, |+i>, |0>) and
/// -1 for the second.
using OutcomeVector = std::vector<int>;

/// Outcome index with bit (n-1-q) set when qubit q returned -1.
std::size_t outcome_index(std::span<const int> outcome);
OutcomeVector outcome_from_index(std::size_t index, int num_qubits);

StateVector build_plus_state(int n);
StateVector apply_cz(const StateVector& state, int i, int j);
StateVector apply_local_gate(const StateVector& state, LocalGate gate, int qubit);
/// CZ(0,1) CZ(1,2) ... CZ(n-2,n-1) |+>^n
StateVector build_linear_cluster(int n);
/// H(0) X(1) X(2) H(3) applied to the four-qubit linear cluster; the state
/// the measurement settings table is written for.
StateVector build_lab_cluster();

/// True when a = e^{i phi} b, with the phase taken from the first amplitude of
/// a whose magnitude exceeds tol.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = 1e-12);

/// Born-rule probabilities of a joint local Pauli measurement, indexed by
/// outcome_index().
std::vector<double> outcome_distribution(const StateVector& state, std::span<const PauliBasis> setting);

OutcomeVector sample_outcomes(const StateVector& state, std::span<const PauliBasis> setting, const NoiseModel& noise,
                              Rng& rng);

/// Precomputes the outcome distribution of one (state, setting) pair so that
/// repeated rounds only pay for the draw.
class OutcomeSampler {
public:
    OutcomeSampler(const StateVector& state, std::span<const PauliBasis> setting, const NoiseModel& noise);

    OutcomeVector sample(Rng& rng) const;
    std::size_t sample_index(Rng& rng) const;
    std::span<const double> distribution() const { return probabilities_; }

private:
    int num_qubits_;
    double visibility_;
    std::vector<double> probabilities_;
    std::vector<double> cumulative_;
};

}  // namespace cka::quantum
