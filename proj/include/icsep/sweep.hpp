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

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "icsep/channel.hpp"
#include "icsep/dof.hpp"
#include "icsep/outerbounds.hpp"
#include "icsep/rates.hpp"

namespace icsep {

/// Joint-encoding innerbound: aligned beamforming with equal per-user power
/// when the channel admits it, otherwise the best single-user rate.
struct JointRate {
    double rate = 0.0;
    bool aligned = false;
};

inline JointRate joint_rate(const ParallelChannel& ch, const std::optional<BeamformingScheme>& scheme, double snr) {
    if (scheme)
        return {tin_rate(ch, scheme->with_equal_power(snr)).sum_rate, true};
    return {best_tdma_rate(ch, snr).sum_rate, false};
}

inline JointRate joint_rate(const ParallelChannel& ch, double snr) { return joint_rate(ch, ia_feasibility(ch), snr); }

/// One point of the joint-versus-separate comparison.
struct SweepResult {
    double snr_db = 0.0;
    double joint_tin = 0.0;
    std::optional<double> separate_outer;
    double tdma = 0.0;
    std::string scheme_note;
};

inline std::vector<SweepResult> sweep(const ParallelChannel& ch, const std::vector<double>& snr_db_grid) {
    if (snr_db_grid.empty())
        throw std::invalid_argument("sweep: empty SNR grid");
    for (std::size_t k = 1; k < snr_db_grid.size(); ++k)
        if (!(snr_db_grid[k] > snr_db_grid[k - 1]))
            throw std::invalid_argument("sweep: SNR grid must be strictly increasing");
    require_valid(ch);

    const auto scheme = ia_feasibility(ch);
    bool separable_bound = true;
    for (std::size_t m = 0; m < ch.size(); ++m)
        separable_bound = separable_bound && example1_magnitude(ch[m]).has_value();

    std::string note = scheme ? "ia-aligned;equal-power" : "ia-infeasible;tdma-fallback";
    if (!separable_bound)
        note += ";no-separate-bound";

    std::vector<SweepResult> out;
    out.reserve(snr_db_grid.size());
    for (double db : snr_db_grid) {
        const double snr = db_to_linear(db);
        SweepResult r;
        r.snr_db = db;
        r.joint_tin = joint_rate(ch, scheme, snr).rate;
        if (separable_bound)
            r.separate_outer = separate_outerbound(ch, snr);
        r.tdma = best_tdma_rate(ch, snr).sum_rate;
        r.scheme_note = note;
        out.push_back(std::move(r));
    }
    return out;
}

/// Inclusive dB grid start, start + step, ... up to stop (within 1e-9 of a step).
inline std::vector<double> db_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start))
        throw std::invalid_argument("db_grid: need step > 0 and stop >= start");
    std::vector<double> grid;
    const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= n; ++k)
        grid.push_back(start + static_cast<double>(k) * step);
    return grid;
}

} // namespace icsep
