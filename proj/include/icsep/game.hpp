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

#include <stdexcept>
#include <string>
#include <vector>

#include "icsep/channel.hpp"
#include "icsep/dof.hpp"
#include "icsep/rates.hpp"
#include "icsep/sweep.hpp"

namespace icsep {

/// The user that is neither `a` nor `b`.
constexpr User third_user(User a, User b) { return User(6 - a.id() - b.id()); }

/// Player 2's move: overwrite the off-diagonal gain at `link` = (a, b) so that
/// the triple (i, j, k) = (b, c, a) satisfies h[i][j]/h[i][i] = h[k][j]/h[k][i],
/// i.e. h[a][b] = h[a][c] h[b][b] / h[b][c] with c the remaining user.
/// For (1,2) this is h12 = h13 h22 / h23.
inline SingleCarrierChannel adversary_best_response(const SingleCarrierChannel& carrier, Link link) {
    if (!link.off_diagonal())
        throw std::invalid_argument("adversary must control an off-diagonal gain");
    require_valid(carrier);
    const User a = link.rx, b = link.tx, c = third_user(a, b);
    return carrier.with_gain(link, carrier(a, c) * carrier(b, b) / carrier(b, c));
}

enum class Winner { player1, player2, undecided };

inline const char* to_string(Winner w) {
    switch (w) {
    case Winner::player1:
        return "player1";
    case Winner::player2:
        return "player2";
    default:
        return "undecided";
    }
}

inline constexpr double kWinnerSlopeTol = 0.1;

struct GameOutcome {
    Winner winner = Winner::undecided;
    ParallelChannel modified_channel;
    std::vector<CarrierDof> per_carrier_dof;
    double joint_dof_estimate = 0.0;
    bool aligned = false;
};

inline Winner declare_winner(double joint_slope, double tol = kWinnerSlopeTol) {
    if (joint_slope <= 1.0 + tol)
        return Winner::player2;
    if (joint_slope >= 1.5 - tol)
        return Winner::player1;
    return Winner::undecided;
}

/// Player 1 fixes `base`; player 2 then best-responds on one coefficient per
/// carrier. Player 1 is credited with the slope of the joint-encoding
/// innerbound on what remains.
inline GameOutcome play_game(const ParallelChannel& base, const std::vector<Link>& adversary_links) {
    if (adversary_links.size() != base.size())
        throw std::invalid_argument("play_game: need exactly one controlled coefficient per carrier (" +
                                    std::to_string(base.size()) + "), got " +
                                    std::to_string(adversary_links.size()));
    require_valid(base);

    std::vector<SingleCarrierChannel> carriers;
    carriers.reserve(base.size());
    for (std::size_t m = 0; m < base.size(); ++m)
        carriers.push_back(adversary_best_response(base[m], adversary_links[m]));
    ParallelChannel modified(std::move(carriers));

    const auto scheme = ia_feasibility(modified);
    const auto est = estimate_dof([&](double snr) { return joint_rate(modified, scheme, snr).rate; });

    GameOutcome out{declare_winner(est.slope), modified, per_carrier_dof(modified), est.slope, scheme.has_value()};
    return out;
}

} // namespace icsep
