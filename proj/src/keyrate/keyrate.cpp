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

#include "cka/keyrate/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cka/error.hpp"

namespace cka::keyrate {

namespace {

constexpr double kGolden = 0.6180339887498949;

void check_rate(double q, const char* what) {
    if (!(q >= 0.0 && q <= 0.5)) throw DomainError(std::string(what) + " must lie in [0, 1/2]");
}

}  // namespace

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary entropy argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double asymptotic_key_rate(double q_verif, double q_keygen_max) {
    check_rate(q_verif, "Q_verif");
    check_rate(q_keygen_max, "Q_keygen");
    return 1.0 - binary_entropy(q_verif) - binary_entropy(q_keygen_max);
}

double asymptotic_key_rate_sigma(double q_verif, double sigma_verif, double q_keygen_max, double sigma_keygen_max) {
    auto slope = [](double q) { return q <= 0.0 || q >= 1.0 ? 0.0 : std::log2((1.0 - q) / q); };
    return std::hypot(slope(q_verif) * sigma_verif, slope(q_keygen_max) * sigma_keygen_max);
}

double fluctuation_penalty(double n, double m, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("security parameter must lie in (0, 1)");
    return std::sqrt((n + m) * (m + 1.0) / (n * m * m) * std::log(2.0 / eps));
}

double verification_rounds(double total_rounds, double p) { return std::round(p * total_rounds); }

double finite_key_rate(const RateInputs& in) {
    check_rate(in.q_verif, "Q_verif");
    check_rate(in.q_keygen_max, "Q_keygen");
    if (!(in.p > 0.0 && in.p < 1.0)) throw DomainError("p must lie in (0, 1)");
    const double big_l = std::floor(in.total_rounds);
    const double m = verification_rounds(big_l, in.p);
    const double n = big_l - m;
    if (m < 1.0 || n < 1.0) throw DomainError("need at least one verification and one key generation round");
    const double mu = fluctuation_penalty(n, m, in.eps);
    const double overhead = std::ceil(std::log2(1.0 / in.eps));
    const double hv = binary_entropy(std::min(in.q_verif + mu, 0.5));
    const double hk = binary_entropy(std::min(in.q_keygen_max + mu, 0.5));
    return (n / big_l) * (1.0 - hv - hk) - overhead / big_l;
}

std::vector<double> log_space(double lo, double hi, int count) {
    std::vector<double> out;
    if (count <= 0) return out;
    if (count == 1) return {lo};
    const double a = std::log(lo);
    const double b = std::log(hi);
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(std::exp(a + (b - a) * i / (count - 1)));
    out.back() = hi;
    return out;
}

Optimum optimize_p(double q_verif, double q_keygen_max, double total_rounds, double eps, int grid_points) {
    if (total_rounds < 10.0) throw DomainError("optimize_p needs L >= 10");
    const double big_l = std::floor(total_rounds);
    // Smallest p giving m >= 1 after rounding, largest 1/2.
    const double p_lo = 1.0 / big_l;
    const double p_hi = 0.5;
    auto rate_at = [&](double log_p) {
        RateInputs in{q_verif, q_keygen_max, big_l, std::exp(log_p), eps};
        const double m = verification_rounds(big_l, in.p);
        if (m < 1.0 || big_l - m < 1.0) return -1e300;
        return finite_key_rate(in);
    };

    const auto grid = log_space(p_lo, p_hi, std::max(grid_points, 3));
    std::size_t best = 0;
    double best_val = -1e300;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = rate_at(std::log(grid[i]));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = std::log(grid[best == 0 ? 0 : best - 1]);
    double b = std::log(grid[std::min(best + 1, grid.size() - 1)]);
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = rate_at(x1);
    double f2 = rate_at(x2);
    for (int iter = 0; iter < 200 && b - a > 1e-12; ++iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = rate_at(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = rate_at(x1);
        }
    }
    Optimum opt{grid[best], best_val};
    for (double x : {x1, x2, a, b}) {
        const double v = rate_at(x);
        if (v > opt.fkr) opt = {std::exp(x), v};
    }
    return opt;
}

std::optional<MinimalLength> min_length_positive(double q_verif, double q_keygen_max, double eps) {
    if (asymptotic_key_rate(q_verif, q_keygen_max) <= 0.0) return std::nullopt;
    auto positive = [&](double l) { return optimize_p(q_verif, q_keygen_max, l, eps).fkr > 0.0; };
    double lo = 10.0;
    double hi = kMaxSearchRounds;
    if (positive(lo)) return MinimalLength{lo, optimize_p(q_verif, q_keygen_max, lo, eps).p};
    if (!positive(hi)) return std::nullopt;
    while (hi - lo > 1.0) {
        // Geometric midpoint while the bracket spans decades, arithmetic after.
        double mid = hi / lo > 4.0 ? std::floor(std::sqrt(lo * hi)) : std::floor(0.5 * (lo + hi));
        if (mid <= lo) mid = lo + 1.0;
        if (positive(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return MinimalLength{hi, optimize_p(q_verif, q_keygen_max, hi, eps).p};
}

RateReport analyze(const RateInputs& in) {
    if (!(in.q_verif >= 0.0 && in.q_verif <= 1.0) || !(in.q_keygen_max >= 0.0 && in.q_keygen_max <= 1.0)) {
        throw DomainError("error rates must lie in [0, 1]");
    }
    RateReport r;
    r.saturated = in.q_verif > 0.5 || in.q_keygen_max > 0.5;
    r.q_verif = std::min(in.q_verif, 0.5);
    r.q_keygen_max = std::min(in.q_keygen_max, 0.5);
    r.h_verif = binary_entropy(r.q_verif);
    r.h_keygen = binary_entropy(r.q_keygen_max);
    r.akr = asymptotic_key_rate(r.q_verif, r.q_keygen_max);
    r.total_rounds = std::floor(in.total_rounds);
    r.p = in.p;
    r.eps = in.eps;
    const double m = verification_rounds(r.total_rounds, in.p);
    r.penalty = fluctuation_penalty(r.total_rounds - m, m, in.eps);
    r.fkr = finite_key_rate({r.q_verif, r.q_keygen_max, r.total_rounds, in.p, in.eps});
    r.optimum = optimize_p(r.q_verif, r.q_keygen_max, r.total_rounds, in.eps);
    r.min_length = min_length_positive(r.q_verif, r.q_keygen_max, in.eps);
    return r;
}

std::vector<SurfacePoint> rate_surface(double q_verif, double q_keygen_max, double eps, double l_min, double l_max,
                                       int l_points, double p_min, double p_max, int p_points) {
    std::vector<SurfacePoint> out;
    for (double l : log_space(l_min, l_max, l_points)) {
        const double big_l = std::floor(l);
        for (double p : log_space(p_min, p_max, p_points)) {
            const double m = verification_rounds(big_l, p);
            if (m < 1.0 || big_l - m < 1.0) continue;
            out.push_back({big_l, p, finite_key_rate({q_verif, q_keygen_max, big_l, p, eps})});
        }
    }
    return out;
}

}  // namespace cka::keyrate
