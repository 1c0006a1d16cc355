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

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "icsep/channel.hpp"
#include "icsep/power.hpp"

namespace icsep {

/// Rates are in bits per real channel use, normalized per carrier.
inline double half_log2_1p(double x) { return 0.5 * std::log1p(x) / std::numbers::ln2; }

/// Unit-norm transmit directions v_j and receive combiners u_i (length M),
/// plus per-user transmit power p_j in linear units.
struct BeamformingScheme {
    std::array<std::vector<double>, kUsers> v;
    std::array<std::vector<double>, kUsers> u;
    std::array<double, kUsers> p{0.0, 0.0, 0.0};

    double total_power() const { return p[0] + p[1] + p[2]; }

    BeamformingScheme with_equal_power(double snr) const {
        BeamformingScheme s = *this;
        s.p.fill(snr / static_cast<double>(kUsers));
        return s;
    }
};

struct RateReport {
    std::array<double, kUsers> per_user_rate{0.0, 0.0, 0.0};
    double sum_rate = 0.0;
    double snr = 0.0;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
        s += a[m] * b[m];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void normalize(std::vector<double>& a) {
    const double n = norm(a);
    for (double& x : a)
        x /= n;
}

inline void check_scheme(const BeamformingScheme& s, std::size_t carriers) {
    constexpr double kNormTol = 1e-9;
    for (std::size_t i = 0; i < kUsers; ++i) {
        const std::string who = "user " + std::to_string(i + 1);
        if (s.v[i].size() != carriers || s.u[i].size() != carriers)
            throw std::invalid_argument("beamforming vectors of " + who + " must have length " +
                                        std::to_string(carriers));
        if (std::abs(norm(s.v[i]) - 1.0) > kNormTol || std::abs(norm(s.u[i]) - 1.0) > kNormTol)
            throw std::invalid_argument("beamforming vectors of " + who + " must have unit norm");
        if (!(s.p[i] >= 0.0) || !std::isfinite(s.p[i]))
            throw std::invalid_argument("transmit power of " + who + " must be finite and >= 0");
    }
}

} // namespace detail

/// u_rx . (H_{rx,tx} v_tx). Zero for every rx != tx means interference is nulled.
inline double effective_gain(const ParallelChannel& ch, const BeamformingScheme& s, User rx, User tx) {
    const auto& u = s.u[rx.index()];
    const auto& v = s.v[tx.index()];
    double acc = 0.0;
    for (std::size_t m = 0; m < ch.size(); ++m)
        acc += u[m] * (ch[m](rx, tx) * v[m]);
    return acc;
}

/// Joint-encoding rate with linear beamforming; residual interference is
/// treated as Gaussian noise at each receiver.
inline RateReport tin_rate(const ParallelChannel& ch, const BeamformingScheme& s) {
    require_valid(ch);
    detail::check_scheme(s, ch.size());

    const double per_carrier = 1.0 / static_cast<double>(ch.size());
    RateReport r;
    r.snr = s.total_power();
    for (std::size_t i = 0; i < kUsers; ++i) {
        const User rx = User::from_index(i);
        const double desired = effective_gain(ch, s, rx, rx);
        double interference = 0.0;
        for (std::size_t j = 0; j < kUsers; ++j) {
            if (j == i)
                continue;
            const double q = effective_gain(ch, s, rx, User::from_index(j));
            interference += s.p[j] * q * q;
        }
        r.per_user_rate[i] = per_carrier * half_log2_1p(s.p[i] * desired * desired / (1.0 + interference));
        r.sum_rate += r.per_user_rate[i];
    }
    return r;
}

/// Single active user over all carriers with water-filled power; the other
/// two users stay silent.
inline RateReport tdma_rate(const ParallelChannel& ch, User active, double snr) {
    require_valid(ch);
    if (!(snr >= 0.0) || !std::isfinite(snr))
        throw std::invalid_argument("tdma_rate: snr must be finite and >= 0");

    std::vector<double> gains_sq;
    gains_sq.reserve(ch.size());
    for (const auto& c : ch.carriers())
        gains_sq.push_back(c(active, active) * c(active, active));

    const auto alloc = water_fill(gains_sq, snr);
    double rate = 0.0;
    for (std::size_t m = 0; m < ch.size(); ++m)
        rate += half_log2_1p(gains_sq[m] * alloc.per_carrier[m]);
    rate /= static_cast<double>(ch.size());

    RateReport r;
    r.per_user_rate[active.index()] = rate;
    r.sum_rate = rate;
    r.snr = snr;
    return r;
}

/// Best of the three single-user rates.
inline RateReport best_tdma_rate(const ParallelChannel& ch, double snr) {
    RateReport best = tdma_rate(ch, User(1), snr);
    for (int user = 2; user <= static_cast<int>(kUsers); ++user) {
        auto r = tdma_rate(ch, User(user), snr);
        if (r.sum_rate > best.sum_rate)
            best = r;
    }
    return best;
}

/// Default tolerance for "T is a multiple of the identity" in ia_feasibility.
inline constexpr double kAlignmentTol = 1e-9;

/// Two-carrier alignment: v3 ~ H23^-1 H21 v1, v2 ~ H32^-1 H31 v1, with
/// v1 = [1,1]/sqrt(2) when T = (H13 H23^-1 H21)^-1 H12 H32^-1 H31 is a
/// multiple of the identity. Each combiner is the unit vector orthogonal to
/// the aligned interference, signed so the desired gain is positive.
/// Returns powers of zero; callers set them (see with_equal_power).
inline std::optional<BeamformingScheme> ia_feasibility(const ParallelChannel& ch, double tol = kAlignmentTol) {
    if (ch.size() != 2)
        return std::nullopt;
    require_valid(ch);

    const User u1(1), u2(2), u3(3);
    std::array<double, 2> t{};
    for (std::size_t m = 0; m < 2; ++m) {
        const auto& c = ch[m];
        t[m] = (c(u1, u2) / c(u3, u2) * c(u3, u1)) / (c(u1, u3) / c(u2, u3) * c(u2, u1));
    }
    if (std::abs(t[0] - t[1]) > tol * std::max(std::abs(t[0]), std::abs(t[1])))
        return std::nullopt;

    BeamformingScheme s;
    const double a = 1.0 / std::numbers::sqrt2;
    s.v[0] = {a, a};
    s.v[2] = {ch[0](u2, u1) / ch[0](u2, u3) * a, ch[1](u2, u1) / ch[1](u2, u3) * a};
    s.v[1] = {ch[0](u3, u1) / ch[0](u3, u2) * a, ch[1](u3, u1) / ch[1](u3, u2) * a};
    detail::normalize(s.v[1]);
    detail::normalize(s.v[2]);

    for (std::size_t i = 0; i < kUsers; ++i) {
        const User rx = User::from_index(i);
        const User other = User::from_index(i == 0 ? 1 : 0);
        const std::vector<double> d = {ch[0](rx, other) * s.v[other.index()][0],
                                       ch[1](rx, other) * s.v[other.index()][1]};
        std::vector<double> u = {d[1], -d[0]};
        detail::normalize(u);
        const std::vector<double> want = {ch[0](rx, rx) * s.v[i][0], ch[1](rx, rx) * s.v[i][1]};
        const double g = detail::dot(u, want);
        const double scale = std::max({1.0, std::abs(ch[0](rx, rx)), std::abs(ch[1](rx, rx))});
        if (std::abs(g) <= tol * scale)
            return std::nullopt;
        if (g < 0.0)
            for (double& x : u)
                x = -x;
        s.u[i] = std::move(u);
    }
    return s;
}

} // namespace icsep
