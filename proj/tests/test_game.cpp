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

#include <random>

#include <gtest/gtest.h>

#include "icsep/game.hpp"

namespace icsep {
namespace {

const std::vector<Link> kOffDiagonal{{User(1), User(2)}, {User(1), User(3)}, {User(2), User(1)},
                                     {User(2), User(3)}, {User(3), User(1)}, {User(3), User(2)}};

bool witness_through(const SingleCarrierChannel& c, Link link) {
    for (const auto& w : singularity_witnesses(c, kExactRatioTol)) {
        // Entries used by a witness: (i,j), (i,i), (k,j), (k,i).
        const Link used[] = {{w.i, w.j}, {w.k, w.j}, {w.k, w.i}};
        for (const auto& u : used)
            if (u == link)
                return true;
    }
    return false;
}

TEST(AdversaryBestResponse, PaperInstance) {
    GainMatrix h{{{1, 7, 2}, {1, 3, 4}, {1, 1, 1}}};
    const auto out = adversary_best_response(SingleCarrierChannel(h), {User(1), User(2)});
    EXPECT_DOUBLE_EQ(out(User(1), User(2)), 1.5); // h13 h22 / h23 = 2 * 3 / 4
    EXPECT_TRUE(singularity_check_exact(out));
}

TEST(AdversaryBestResponse, SymmetricPositions) {
    // Solving h[1][3]/h[1][1] = h[2][3]/h[2][1] for h21 gives h23 h11 / h13;
    // solving h[1][2]/h[1][1] = h[3][2]/h[3][1] for h31 gives h32 h11 / h12.
    const SingleCarrierChannel c(GainMatrix{{{2, 3, 5}, {7, 11, 13}, {17, 19, 23}}});
    EXPECT_DOUBLE_EQ(adversary_best_response(c, {User(2), User(1)})(User(2), User(1)), 13.0 * 2.0 / 5.0);
    EXPECT_DOUBLE_EQ(adversary_best_response(c, {User(3), User(1)})(User(3), User(1)), 19.0 * 2.0 / 3.0);
    // On counterexample carrier 1 every substitution leaves the value at 1.
    const auto ce = make_counterexample()[0];
    EXPECT_EQ(adversary_best_response(ce, {User(2), User(1)}), ce);
}

TEST(AdversaryBestResponse, AlwaysSingularAndIdempotent) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    std::bernoulli_distribution neg(0.5);
    std::uniform_int_distribution<std::size_t> pos(0, 5);
    for (int trial = 0; trial < 500; ++trial) {
        GainMatrix h;
        for (auto& row : h)
            for (auto& x : row)
                x = neg(rng) ? -mag(rng) : mag(rng);
        const SingleCarrierChannel c(h);
        const Link link = kOffDiagonal[pos(rng)];
        const auto once = adversary_best_response(c, link);
        EXPECT_TRUE(singularity_check_exact(once));
        EXPECT_TRUE(witness_through(once, link));
        EXPECT_EQ(adversary_best_response(once, link), once);
        EXPECT_NE(once(link.rx, link.tx), 0.0);
    }
}

TEST(AdversaryBestResponse, RejectsDiagonal) {
    EXPECT_THROW(adversary_best_response(make_counterexample()[0], {User(2), User(2)}), std::invalid_argument);
}

TEST(PlayGame, CounterexamplePlayerOneWins) {
    const auto g = play_game(make_counterexample(), {{User(1), User(2)}, {User(2), User(3)}});
    EXPECT_EQ(g.per_carrier_dof, (std::vector<CarrierDof>{CarrierDof::one, CarrierDof::one}));
    EXPECT_TRUE(g.aligned);
    EXPECT_NEAR(g.joint_dof_estimate, 1.5, 0.05);
    EXPECT_EQ(g.winner, Winner::player1);
}

TEST(PlayGame, SingleCarrierPlayerTwoWins) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> mag(0.2, 5.0);
    for (const auto& link : kOffDiagonal) {
        GainMatrix h;
        for (auto& row : h)
            for (auto& x : row)
                x = mag(rng);
        const auto g = play_game(ParallelChannel({SingleCarrierChannel(h)}), {link});
        EXPECT_EQ(g.per_carrier_dof, std::vector<CarrierDof>{CarrierDof::one});
        EXPECT_EQ(g.winner, Winner::player2);
        EXPECT_NEAR(g.joint_dof_estimate, 1.0, 0.05);
    }
}

TEST(PlayGame, SameCoefficientOnEveryCarrierPlayerTwoWins) {
    const Link h12{User(1), User(2)};
    const auto g = play_game(make_counterexample(), {h12, h12});
    EXPECT_FALSE(g.aligned);
    EXPECT_EQ(g.modified_channel[1](User(1), User(2)), -1.0); // H12 = H13 H22 H23^-1
    EXPECT_LE(g.joint_dof_estimate, 1.0 + kWinnerSlopeTol);
    EXPECT_EQ(g.winner, Winner::player2);
}

TEST(PlayGame, NeedsOneLinkPerCarrier) {
    EXPECT_THROW(play_game(make_counterexample(), {{User(1), User(2)}}), std::invalid_argument);
}

TEST(DeclareWinner, Thresholds) {
    EXPECT_EQ(declare_winner(1.0), Winner::player2);
    EXPECT_EQ(declare_winner(1.05), Winner::player2);
    EXPECT_EQ(declare_winner(1.25), Winner::undecided);
    EXPECT_EQ(declare_winner(1.45), Winner::player1);
    EXPECT_STREQ(to_string(Winner::undecided), "undecided");
}

} // namespace
} // namespace icsep
