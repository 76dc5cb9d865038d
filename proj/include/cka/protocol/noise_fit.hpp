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

#include <span>

#include "cka/protocol/rounds.hpp"

namespace cka::protocol {

/// A statistic observed in the lab that the white-noise model should match.
enum class Observable { success_rate, error_ab, error_ac };

struct FitTarget {
    Configuration config = Configuration::X2;
    RoundType type = RoundType::KeyGen;
    Observable observable = Observable::success_rate;
    double value = 0.0;
    /// One-sigma uncertainty; weights the fit.
    double sigma = 1.0;
};

/// Every observable is affine in the visibility, value(v) = uniform + v *
/// (ideal - uniform); both endpoints are computed by enumeration.
struct ObservableLine {
    double at_ideal = 0.0;
    double at_uniform = 0.0;
    double at(double visibility) const { return at_uniform + visibility * (at_ideal - at_uniform); }
};

ObservableLine observable_line(Configuration config, RoundType type, Observable observable);

/// Inverse-variance weighted least-squares visibility, clamped to [0, 1].
double fit_visibility(std::span<const FitTarget> targets);

}  // namespace cka::protocol
