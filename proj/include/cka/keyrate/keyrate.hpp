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
#include <optional>
#include <span>
#include <vector>

namespace cka::keyrate {

inline constexpr double kDefaultEpsilon = 1e-5;

/// h(x) = -x log2 x - (1 - x) log2 (1 - x), with h(0) = h(1) = 0.
double binary_entropy(double x);

/// 1 - h(q_verif) - h(q_keygen_max). Both arguments must lie in [0, 1/2].
double asymptotic_key_rate(double q_verif, double q_keygen_max);

/// First-order error propagation of the asymptotic rate.
double asymptotic_key_rate_sigma(double q_verif, double sigma_verif, double q_keygen_max, double sigma_keygen_max);

struct RateInputs {
    double q_verif = 0.0;
    double q_keygen_max = 0.0;
    double total_rounds = 0.0;  // L; a real so sweeps can reach 1e12 and beyond
    double p = 0.0;
    double eps = kDefaultEpsilon;
};

/// Serfling-type fluctuation term for n key rounds and m verification rounds:
/// sqrt((n + m)(m + 1) / (n m^2) * ln(2 / eps)).
double fluctuation_penalty(double n, double m, double eps);

/// Number of verification rounds, round(p L).
double verification_rounds(double total_rounds, double p);

/// (n / L) [1 - h(min(Qv + mu, 1/2)) - h(min(Qk + mu, 1/2))] - ceil(log2(1/eps)) / L.
/// Unclipped; throws DomainError unless m >= 1 and n >= 1.
double finite_key_rate(const RateInputs& in);

struct Optimum {
    double p = 0.0;
    double fkr = 0.0;
};

/// Maximizes the finite rate over p in (1/L, 1/2]: coarse log-spaced grid,
/// then golden-section refinement around the best grid point.
Optimum optimize_p(double q_verif, double q_keygen_max, double total_rounds, double eps = kDefaultEpsilon,
                   int grid_points = 256);

struct MinimalLength {
    double total_rounds = 0.0;
    double p = 0.0;
};

inline constexpr double kMaxSearchRounds = 1e16;

/// Smallest integer L in [10, kMaxSearchRounds] with a positive optimized
/// finite rate, by bisection. Empty when the asymptotic rate is not positive
/// or no such L exists in range.
std::optional<MinimalLength> min_length_positive(double q_verif, double q_keygen_max, double eps = kDefaultEpsilon);

struct RateReport {
    double q_verif = 0.0;
    double q_keygen_max = 0.0;
    bool saturated = false;  // an input above 1/2 was clamped
    double h_verif = 0.0;
    double h_keygen = 0.0;
    double akr = 0.0;
    double total_rounds = 0.0;
    double p = 0.0;
    double eps = kDefaultEpsilon;
    double penalty = 0.0;
    double fkr = 0.0;
    Optimum optimum;
    std::optional<MinimalLength> min_length;
};

/// Full analysis at one (L, p); inputs above 1/2 are clamped and flagged.
RateReport analyze(const RateInputs& in);

struct SurfacePoint {
    double total_rounds;
    double p;
    double fkr;
};

/// FKR over log-spaced grids; points with m < 1 or n < 1 are skipped.
std::vector<SurfacePoint> rate_surface(double q_verif, double q_keygen_max, double eps, double l_min, double l_max,
                                       int l_points, double p_min, double p_max, int p_points);

/// log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int count);

}  // namespace cka::keyrate
