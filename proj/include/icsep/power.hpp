// SPDX-License-Identifier: Apache-2.0
//
// icsep: rate and outerbound toolkit for 3-user Gaussian interference channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace icsep {

/// Linear power per carrier.
struct PowerAllocation {
    std::vector<double> per_carrier;

    double total() const { return std::accumulate(per_carrier.begin(), per_carrier.end(), 0.0); }
};

using CarrierObjective = std::function<double(double)>;

struct AllocatorConfig {
    int max_iterations = 200;
    double budget_tol = 1e-9;
};

namespace detail {

// Derivative by finite differences; one-sided second order near the origin
// because objectives need not be defined for negative power.
inline double marginal(const CarrierObjective& f, double p) {
    const double step = 1e-6 * std::max(1.0, p);
    if (p < step)
        return (-3.0 * f(p) + 4.0 * f(p + step) - f(p + 2.0 * step)) / (2.0 * step);
    return (f(p + step) - f(p - step)) / (2.0 * step);
}

// Largest p in [0, cap] with marginal >= lambda.
inline double demand(const CarrierObjective& f, double lambda, double cap, int iterations) {
    if (marginal(f, 0.0) <= lambda)
        return 0.0;
    if (marginal(f, cap) >= lambda)
        return cap;
    double lo = 0.0, hi = cap;
    for (int it = 0; it < iterations && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (marginal(f, mid) >= lambda ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline void check_concave(const CarrierObjective& f, double cap, std::size_t which) {
    constexpr int kSamples = 16;
    double prev = marginal(f, 0.0);
    for (int s = 1; s <= kSamples; ++s) {
        const double d = marginal(f, cap * s / kSamples);
        if (!std::isfinite(d) || d > prev + 1e-6 * std::max(1.0, std::abs(prev)))
            throw std::domain_error("allocate_power: objective for carrier " + std::to_string(which + 1) +
                                    " is not concave nondecreasing");
        prev = d;
    }
}

} // namespace detail

/// Maximizes sum_m f_m(p_m) subject to sum_m p_m <= total_snr by bisection on
/// the common marginal value. Each f_m must be concave and nondecreasing.
inline PowerAllocation allocate_power(std::span<const CarrierObjective> objectives, double total_snr,
                                      const AllocatorConfig& cfg = {}) {
    if (objectives.empty())
        throw std::invalid_argument("allocate_power: no carriers");
    if (!(total_snr >= 0.0) || !std::isfinite(total_snr))
        throw std::invalid_argument("allocate_power: total power must be finite and >= 0");

    const std::size_t count = objectives.size();
    PowerAllocation out{std::vector<double>(count, 0.0)};
    if (total_snr == 0.0)
        return out;
    if (count == 1) {
        out.per_carrier[0] = total_snr;
        return out;
    }

    for (std::size_t m = 0; m < count; ++m)
        detail::check_concave(objectives[m], total_snr, m);

    auto demands = [&](double lambda) {
        std::vector<double> p(count);
        for (std::size_t m = 0; m < count; ++m)
            p[m] = detail::demand(objectives[m], lambda, total_snr, cfg.max_iterations);
        return p;
    };
    auto sum = [](const std::vector<double>& p) { return std::accumulate(p.begin(), p.end(), 0.0); };

    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    for (const auto& f : objectives)
        lambda_hi = std::max(lambda_hi, detail::marginal(f, 0.0));

    auto p_lo = demands(lambda_lo);
    if (sum(p_lo) <= total_snr) {
        // Budget is not binding: every carrier saturates before marginals hit zero.
        out.per_carrier = p_lo;
        return out;
    }
    auto p_hi = demands(lambda_hi);

    for (int it = 0; it < cfg.max_iterations; ++it) {
        const double mid = 0.5 * (lambda_lo + lambda_hi);
        if (mid <= lambda_lo || mid >= lambda_hi)
            break;
        auto p_mid = demands(mid);
        if (sum(p_mid) >= total_snr) {
            lambda_lo = mid;
            p_lo = std::move(p_mid);
        } else {
            lambda_hi = mid;
            p_hi = std::move(p_mid);
        }
        if (sum(p_lo) - sum(p_hi) <= cfg.budget_tol * 1e-3)
            break;
    }

    // Blend the two bracketing demand vectors so the budget binds exactly.
    const double s_lo = sum(p_lo), s_hi = sum(p_hi);
    const double w = s_lo > s_hi ? (total_snr - s_hi) / (s_lo - s_hi) : 1.0;
    for (std::size_t m = 0; m < count; ++m)
        out.per_carrier[m] = p_hi[m] + w * (p_lo[m] - p_hi[m]);

    if (std::abs(out.total() - total_snr) > cfg.budget_tol * std::max(1.0, total_snr))
        throw std::domain_error("allocate_power: multiplier bisection did not converge (non-concave input?)");
    return out;
}

inline PowerAllocation allocate_power(const std::vector<CarrierObjective>& objectives, double total_snr,
                                      const AllocatorConfig& cfg = {}) {
    return allocate_power(std::span<const CarrierObjective>(objectives), total_snr, cfg);
}

/// Classic water-filling for sum_m (1/2) log2(1 + g_m p_m), g_m = |h_m|^2 > 0.
inline PowerAllocation water_fill(std::span<const double> gains_sq, double total_snr) {
    if (gains_sq.empty())
        throw std::invalid_argument("water_fill: no carriers");
    if (!(total_snr >= 0.0) || !std::isfinite(total_snr))
        throw std::invalid_argument("water_fill: total power must be finite and >= 0");
    for (double g : gains_sq)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("water_fill: gains must be positive and finite");

    const std::size_t count = gains_sq.size();
    PowerAllocation out{std::vector<double>(count, 0.0)};
    if (total_snr == 0.0)
        return out;

    double floor_max = 0.0;
    for (double g : gains_sq)
        floor_max = std::max(floor_max, 1.0 / g);

    auto poured = [&](double level) {
        double s = 0.0;
        for (double g : gains_sq)
            s += std::max(0.0, level - 1.0 / g);
        return s;
    };

    double lo = 0.0, hi = total_snr + floor_max;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (poured(mid) < total_snr ? lo : hi) = mid;
    }

    // Polish the level on the active set found by bisection.
    double inv_sum = 0.0;
    std::size_t active = 0;
    for (double g : gains_sq)
        if (1.0 / g < hi) {
            inv_sum += 1.0 / g;
            ++active;
        }
    const double level = (total_snr + inv_sum) / static_cast<double>(active);
    for (std::size_t m = 0; m < count; ++m)
        out.per_carrier[m] = std::max(0.0, level - 1.0 / gains_sq[m]);
    return out;
}

} // namespace icsep
