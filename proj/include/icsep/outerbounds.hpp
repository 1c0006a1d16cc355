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
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "icsep/channel.hpp"
#include "icsep/power.hpp"
#include "icsep/rates.hpp"

namespace icsep {

/// Sum-capacity bound (1/2) log2(1 + snr) for carriers shaped like the
/// counterexample carriers, where one receiver can decode all three messages.
inline double example1_bound(double snr) {
    if (!(snr >= 0.0))
        throw std::invalid_argument("example1_bound: snr must be >= 0");
    return half_log2_1p(snr);
}

/// Genie side information S1 = a1 X1 + (1-h) X2 + X3 + Z~1 with
/// Z~1 ~ N(0, sigma^2) and corr(Z1, Z~1) = rho.
struct GenieParams {
    double a1 = 0.0;
    double sigma = 1.0;
    double rho = -0.5;
};

inline constexpr double kGenieConstraintSlack = 1e-12;

/// E[(Z1 + Z~1)^2] <= 1 and the noise covariance is positive definite.
inline bool is_feasible(const GenieParams& g) {
    if (!std::isfinite(g.a1) || !(g.sigma > 0.0) || !std::isfinite(g.sigma) || !(std::abs(g.rho) < 1.0))
        return false;
    if (1.0 + g.sigma * g.sigma + 2.0 * g.rho * g.sigma > 1.0 + kGenieConstraintSlack)
        return false;
    return g.sigma * g.sigma * (1.0 - g.rho * g.rho) > 0.0;
}

class InfeasibleGenie : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline void require_strong_cross_gain(double h) {
    if (!(h > 1.0) || !std::isfinite(h))
        throw std::invalid_argument("symmetric MAC bound requires cross gain h > 1, got " + std::to_string(h));
}

// (1/2) log2 det(Kz + (snr/3) H H^T) / det(Kz) with H = [[1,h,h],[a1,1-h,0]].
inline double mac_value(double h, double snr, const GenieParams& g) {
    const double c = snr / 3.0;
    const double g11 = 1.0 + 2.0 * h * h;
    const double g12 = g.a1 + h * (1.0 - h);
    const double g22 = g.a1 * g.a1 + (1.0 - h) * (1.0 - h);
    const double k12 = g.rho * g.sigma;
    const double k22 = g.sigma * g.sigma;
    const double det_k = k22 - k12 * k12;
    const double a11 = 1.0 + c * g11, a12 = k12 + c * g12, a22 = k22 + c * g22;
    const double det_a = a11 * a22 - a12 * a12;
    return 0.5 * std::log2(det_a / det_k);
}

} // namespace detail

/// Half the genie-aided SIMO MAC sum capacity for the symmetric channel with
/// unit direct gains and cross gain h > 1.
inline double mac_bound_eval(double h, double snr, const GenieParams& params) {
    detail::require_strong_cross_gain(h);
    if (!(snr >= 0.0) || !std::isfinite(snr))
        throw std::invalid_argument("mac_bound_eval: snr must be finite and >= 0");
    if (!is_feasible(params))
        throw InfeasibleGenie("genie parameters violate E[(Z1+Z~1)^2] <= 1 or give a singular noise covariance");
    return std::max(0.0, detail::mac_value(h, snr, params));
}

struct MacSearchConfig {
    double a1_range = 0.0;  ///< |a1| <= a1_range; 0 selects 4h
    double sigma_max = 2.0;
    double rho_margin = 1e-6; ///< rho stays in (-1 + margin, 1 - margin)
    int a1_points = 41;
    int sigma_points = 24;
    int rho_points = 12;
    int max_refine_evaluations = 6000; ///< Nelder-Mead budget after the grid
    double f_tol = 1e-14;
};

struct MacBoundResult {
    double value = 0.0;
    GenieParams params;
    double h = 0.0;
    int evaluations = 0;
};

namespace detail {

struct GenieBox {
    double a1_range;
    double sigma_lo;
    double sigma_hi;
    double rho_floor;

    // Coordinates are (a1, sigma, slack) with rho = -sigma/2 - slack.
    std::array<double, 3> clip(std::array<double, 3> x) const {
        x[0] = std::clamp(x[0], -a1_range, a1_range);
        x[1] = std::clamp(x[1], sigma_lo, sigma_hi);
        const double slack_hi = std::max(0.0, -x[1] / 2.0 - rho_floor);
        x[2] = std::clamp(x[2], 0.0, slack_hi);
        return x;
    }

    static GenieParams params(const std::array<double, 3>& x) { return {x[0], x[1], -x[1] / 2.0 - x[2]}; }
};

inline GenieBox make_box(double h, const MacSearchConfig& cfg) {
    const double a1_range = cfg.a1_range > 0.0 ? cfg.a1_range : 4.0 * h;
    const double rho_floor = -1.0 + cfg.rho_margin;
    // rho <= -sigma/2 together with rho > -1 caps sigma below 2.
    const double sigma_hi = std::min(cfg.sigma_max, -2.0 * rho_floor);
    return {a1_range, 1e-6, sigma_hi, rho_floor};
}

} // namespace detail

/// Minimizes mac_bound_eval over feasible genie parameters: coarse grid, then
/// Nelder-Mead from the best grid point with the constraint enforced by
/// clipping.
inline MacBoundResult mac_bound_optimize(double h, double snr, const MacSearchConfig& cfg = {}) {
    detail::require_strong_cross_gain(h);
    if (!(snr >= 0.0) || !std::isfinite(snr))
        throw std::invalid_argument("mac_bound_optimize: snr must be finite and >= 0");
    if (cfg.a1_points < 1 || cfg.sigma_points < 1 || cfg.rho_points < 1)
        throw std::invalid_argument("mac_bound_optimize: empty search grid");

    const auto box = detail::make_box(h, cfg);
    MacBoundResult best;
    best.h = h;
    best.value = std::numeric_limits<double>::infinity();
    std::array<double, 3> best_x{};

    auto consider = [&](const std::array<double, 3>& x) {
        const GenieParams g = detail::GenieBox::params(x);
        ++best.evaluations;
        if (!is_feasible(g))
            return std::numeric_limits<double>::infinity();
        const double v = std::max(0.0, detail::mac_value(h, snr, g));
        if (v < best.value) {
            best.value = v;
            best.params = g;
            best_x = x;
        }
        return v;
    };

    for (int i = 0; i < cfg.a1_points; ++i) {
        const double a1 =
            cfg.a1_points == 1 ? 0.0 : -box.a1_range + 2.0 * box.a1_range * i / (cfg.a1_points - 1);
        for (int s = 1; s <= cfg.sigma_points; ++s) {
            const double sigma = box.sigma_hi * s / (cfg.sigma_points + 1);
            const double slack_hi = -sigma / 2.0 - box.rho_floor;
            for (int r = 0; r < cfg.rho_points; ++r) {
                const double slack = cfg.rho_points == 1 ? 0.0 : slack_hi * r / (cfg.rho_points - 1);
                consider({a1, sigma, slack});
            }
        }
    }
    if (!std::isfinite(best.value))
        throw std::logic_error("mac_bound_optimize: no feasible grid point");

    // Nelder-Mead on the clipped objective.
    const int budget = best.evaluations + cfg.max_refine_evaluations;
    const std::array<double, 3> step{2.0 * box.a1_range / std::max(1, cfg.a1_points - 1),
                                     box.sigma_hi / (cfg.sigma_points + 1), 0.05};
    for (int restart = 0; restart < 3 && best.evaluations < budget; ++restart) {
        std::array<std::array<double, 3>, 4> simplex;
        std::array<double, 4> f;
        simplex[0] = best_x;
        for (int d = 0; d < 3; ++d) {
            simplex[d + 1] = best_x;
            simplex[d + 1][d] += step[d] / (1 << (2 * restart));
            simplex[d + 1] = box.clip(simplex[d + 1]);
        }
        for (int k = 0; k < 4; ++k)
            f[k] = consider(simplex[k]);

        while (best.evaluations < budget) {
            std::array<int, 4> order{0, 1, 2, 3};
            std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
            const int lo = order[0], hi = order[3], second = order[2];
            if (f[hi] - f[lo] <= cfg.f_tol * std::max(1.0, std::abs(f[lo])))
                break;

            std::array<double, 3> centroid{};
            for (int k = 0; k < 4; ++k)
                if (k != hi)
                    for (int d = 0; d < 3; ++d)
                        centroid[d] += simplex[k][d] / 3.0;

            auto along = [&](double t) {
                std::array<double, 3> x;
                for (int d = 0; d < 3; ++d)
                    x[d] = centroid[d] + t * (simplex[hi][d] - centroid[d]);
                return box.clip(x);
            };

            const auto xr = along(-1.0);
            const double fr = consider(xr);
            if (fr < f[lo]) {
                const auto xe = along(-2.0);
                const double fe = consider(xe);
                if (fe < fr) {
                    simplex[hi] = xe;
                    f[hi] = fe;
                } else {
                    simplex[hi] = xr;
                    f[hi] = fr;
                }
            } else if (fr < f[second]) {
                simplex[hi] = xr;
                f[hi] = fr;
            } else {
                const auto xc = fr < f[hi] ? along(-0.5) : along(0.5);
                const double fc = consider(xc);
                if (fc < std::min(fr, f[hi])) {
                    simplex[hi] = xc;
                    f[hi] = fc;
                } else {
                    for (int k = 0; k < 4; ++k) {
                        if (k == lo)
                            continue;
                        for (int d = 0; d < 3; ++d)
                            simplex[k][d] = simplex[lo][d] + 0.5 * (simplex[k][d] - simplex[lo][d]);
                        simplex[k] = box.clip(simplex[k]);
                        f[k] = consider(simplex[k]);
                    }
                }
            }
        }
    }
    return best;
}

/// Exhaustive grid with spacing `step` on a1, sigma and rho (rho measured
/// down from the constraint boundary -sigma/2). Slow; meant for validating
/// mac_bound_optimize.
inline MacBoundResult mac_bound_dense_grid(double h, double snr, double step = 0.01, const MacSearchConfig& cfg = {}) {
    detail::require_strong_cross_gain(h);
    if (!(step > 0.0))
        throw std::invalid_argument("mac_bound_dense_grid: step must be positive");
    const auto box = detail::make_box(h, cfg);

    MacBoundResult best;
    best.h = h;
    best.value = std::numeric_limits<double>::infinity();
    const int na = static_cast<int>(std::floor(2.0 * box.a1_range / step + 1e-9));
    for (int i = 0; i <= na; ++i) {
        const double a1 = -box.a1_range + i * step;
        for (int s = 1; s * step <= box.sigma_hi; ++s) {
            const double sigma = s * step;
            for (int r = 0;; ++r) {
                const GenieParams g{a1, sigma, -sigma / 2.0 - r * step};
                if (g.rho <= box.rho_floor)
                    break;
                ++best.evaluations;
                const double v = std::max(0.0, detail::mac_value(h, snr, g));
                if (v < best.value) {
                    best.value = v;
                    best.params = g;
                }
            }
        }
    }
    return best;
}

/// Common gain magnitude g when the carrier has the counterexample shape:
/// all |h_ij| equal and a singularity witness present. One receiver can then
/// decode every message, bounding the carrier's sum capacity by
/// (1/2) log2(1 + g^2 SNR).
inline std::optional<double> example1_magnitude(const SingleCarrierChannel& c, double tol = kSingularityTol) {
    require_valid(c);
    const double g = std::abs(c.at(0, 0));
    for (std::size_t i = 0; i < kUsers; ++i)
        for (std::size_t j = 0; j < kUsers; ++j)
            if (std::abs(std::abs(c.at(i, j)) - g) > 1e-12 * g)
                return std::nullopt;
    if (!singularity_check(c, tol))
        return std::nullopt;
    return g;
}

class NoSeparateBound : public std::domain_error {
public:
    NoSeparateBound(std::size_t carrier)
        : std::domain_error("carrier " + std::to_string(carrier + 1) +
                            " has no known finite-SNR sum-capacity bound (needs equal-magnitude gains and a "
                            "singularity witness)"),
          carrier_(carrier) {}

    std::size_t carrier() const { return carrier_; }

private:
    std::size_t carrier_;
};

/// Upper bound on the per-carrier sum rate of any scheme that encodes each
/// carrier separately, maximized over the power split.
inline double separate_outerbound(const ParallelChannel& ch, double snr) {
    if (!(snr >= 0.0) || !std::isfinite(snr))
        throw std::invalid_argument("separate_outerbound: snr must be finite and >= 0");
    require_valid(ch);

    std::vector<CarrierObjective> bounds;
    for (std::size_t m = 0; m < ch.size(); ++m) {
        auto g = example1_magnitude(ch[m]);
        if (!g)
            throw NoSeparateBound(m);
        const double gain_sq = *g * *g;
        bounds.emplace_back([gain_sq](double p) { return half_log2_1p(gain_sq * p); });
    }

    const auto alloc = allocate_power(bounds, snr);
    double total = 0.0;
    for (std::size_t m = 0; m < ch.size(); ++m)
        total += bounds[m](alloc.per_carrier[m]);
    return total / static_cast<double>(ch.size());
}

} // namespace icsep
