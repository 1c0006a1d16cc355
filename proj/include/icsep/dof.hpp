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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace icsep {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// High-SNR slope of a rate curve. The abscissa is (1/2) log2(SNR), the
/// real-channel pre-log, so a slope of 1 means one degree of freedom.
struct DofEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::pair<double, double> snr_db_range;
    static constexpr const char* abscissa = "0.5*log2(snr)";
};

inline constexpr double kDofWindowLoDb = 40.0;
inline constexpr double kDofWindowHiDb = 80.0;
inline constexpr int kDofWindowPoints = 21;
inline constexpr double kMinDofWindowDb = 30.0;

inline DofEstimate estimate_dof(const std::function<double(double)>& rate_fn, double snr_db_lo = kDofWindowLoDb,
                                double snr_db_hi = kDofWindowHiDb, int n_points = kDofWindowPoints) {
    if (!(snr_db_lo >= kMinDofWindowDb) || !(snr_db_hi > snr_db_lo))
        throw std::invalid_argument("estimate_dof: need 30 dB <= lo < hi");
    if (n_points < 5)
        throw std::invalid_argument("estimate_dof: need at least 5 points");

    std::vector<double> x(n_points), y(n_points);
    for (int k = 0; k < n_points; ++k) {
        const double db = snr_db_lo + (snr_db_hi - snr_db_lo) * k / (n_points - 1);
        const double snr = db_to_linear(db);
        x[k] = 0.5 * std::log2(snr);
        y[k] = rate_fn(snr);
        if (!std::isfinite(y[k]))
            throw std::domain_error("estimate_dof: non-finite rate at " + std::to_string(db) + " dB");
    }

    double mx = 0.0, my = 0.0;
    for (int k = 0; k < n_points; ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n_points;
    my /= n_points;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int k = 0; k < n_points; ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
        syy += (y[k] - my) * (y[k] - my);
    }

    DofEstimate est;
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    est.snr_db_range = {snr_db_lo, snr_db_hi};
    if (syy == 0.0) {
        est.r_squared = 1.0;
    } else {
        double ss_res = 0.0;
        for (int k = 0; k < n_points; ++k) {
            const double e = y[k] - (est.intercept + est.slope * x[k]);
            ss_res += e * e;
        }
        est.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return est;
}

} // namespace icsep
