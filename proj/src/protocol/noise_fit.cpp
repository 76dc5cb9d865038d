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

#include "cka/protocol/noise_fit.hpp"

#include <algorithm>
#include <vector>

#include "cka/error.hpp"

namespace cka::protocol {

namespace {

double expectation(const CorrectionRule& rule, Observable observable, std::span<const double> dist) {
    if (observable == Observable::success_rate) return success_probability(rule, dist);
    if (rule.type != RoundType::KeyGen) throw ContractError("pairwise error rates exist only for key generation");
    double total = 0.0;
    for (std::size_t idx = 0; idx < dist.size(); ++idx) {
        const auto rec = evaluate_round(rule, quantum::outcome_from_index(idx, 4));
        const auto& k = *rec.key_bits;
        const bool differs = observable == Observable::error_ab ? k[0] != k[1] : k[0] != k[2];
        if (differs) total += dist[idx];
    }
    return total;
}

}  // namespace

ObservableLine observable_line(Configuration config, RoundType type, Observable observable) {
    const auto state = quantum::build_lab_cluster();
    const auto rule = derive_correction_rule(state, config, type);
    const auto ideal = quantum::outcome_distribution(state, settings_for(config, type));
    const std::vector<double> uniform(ideal.size(), 1.0 / static_cast<double>(ideal.size()));
    return {expectation(rule, observable, ideal), expectation(rule, observable, uniform)};
}

double fit_visibility(std::span<const FitTarget> targets) {
    if (targets.empty()) throw ContractError("visibility fit needs at least one target");
    double num = 0.0;
    double den = 0.0;
    for (const auto& t : targets) {
        if (!(t.sigma > 0.0)) throw ContractError("fit target sigma must be positive");
        const auto line = observable_line(t.config, t.type, t.observable);
        const double slope = line.at_ideal - line.at_uniform;
        const double w = 1.0 / (t.sigma * t.sigma);
        num += w * slope * (t.value - line.at_uniform);
        den += w * slope * slope;
    }
    if (den == 0.0) throw ModelError("fit targets do not depend on the visibility");
    return std::clamp(num / den, 0.0, 1.0);
}

}  // namespace cka::protocol
