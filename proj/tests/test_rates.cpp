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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "icsep/rates.hpp"
#include "oracles.hpp"

namespace icsep {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

ParallelChannel from_diagonals(const std::array<std::array<double, 2>, 9>& d) {
    GainMatrix c0, c1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            c0[i][j] = d[i * 3 + j][0];
            c1[i][j] = d[i * 3 + j][1];
        }
    return ParallelChannel({SingleCarrierChannel(c0), SingleCarrierChannel(c1)});
}

TEST(IaFeasibility, CounterexampleScheme) {
    const auto ch = make_counterexample();
    const auto s = ia_feasibility(ch);
    ASSERT_TRUE(s);
    for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(s->v[j][0], kInvSqrt2, 1e-15);
        EXPECT_EQ(s->v[j][0], s->v[j][1]);
    }
    EXPECT_EQ(s->u[0], (std::vector<double>{s->u[0][0], -s->u[0][0]}));
    EXPECT_GT(s->u[0][0], 0.0);
    EXPECT_GT(s->u[1][0], 0.0);
    EXPECT_LT(s->u[2][0], 0.0);
    EXPECT_EQ(s->u[2][0], -s->u[2][1]);

    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            const double g = effective_gain(ch, *s, User(i), User(j));
            if (i == j)
                EXPECT_NEAR(g, 1.0, 1e-15);
            else
                EXPECT_EQ(g, 0.0) << "cross term " << i << "," << j;
        }
}

TEST(IaFeasibility, ScaledDiagonalsKeepDirections) {
    // Cross gains 1, direct gains of mixed sign and magnitude: T = I still.
    std::array<std::array<double, 2>, 9> d;
    for (auto& x : d)
        x = {1.0, 1.0};
    d[0] = {2.0, -3.0};
    d[4] = {0.5, -1.5};
    d[8] = {-4.0, 0.25};
    const auto s = ia_feasibility(from_diagonals(d));
    ASSERT_TRUE(s);
    for (int j = 0; j < 3; ++j)
        EXPECT_EQ(s->v[j][0], s->v[j][1]);
}

TEST(IaFeasibility, DesiredSignalInsideInterferenceFails) {
    // All-ones channel: T = I but every desired signal lies along [1 1].
    std::array<std::array<double, 2>, 9> d;
    for (auto& x : d)
        x = {1.0, 1.0};
    EXPECT_FALSE(ia_feasibility(from_diagonals(d)));
}

TEST(IaFeasibility, SameCoefficientVariantHasNoOffAxisSolution) {
    auto base = make_counterexample();
    std::vector<SingleCarrierChannel> carriers;
    for (const auto& c : base.carriers())
        carriers.push_back(c.with_gain({User(1), User(2)}, c(User(1), User(3)) * c(User(2), User(2)) / c(User(2), User(3))));
    const ParallelChannel ch(carriers);
    EXPECT_FALSE(ia_feasibility(ch));

    // Exhaustive scan over v1 directions: receiver 1 alignment (H12 v2 parallel
    // to H13 v3) only holds on the coordinate axes.
    const User u1(1), u2(2), u3(3);
    for (int step = 1; step < 3600; ++step) {
        const double theta = std::numbers::pi * step / 3600.0;
        if (step == 1800)
            continue;
        const double v1[2] = {std::cos(theta), std::sin(theta)};
        double a[2], b[2];
        for (int m = 0; m < 2; ++m) {
            const auto& c = ch[m];
            const double v2 = c(u3, u1) / c(u3, u2) * v1[m];
            const double v3 = c(u2, u1) / c(u2, u3) * v1[m];
            a[m] = c(u1, u2) * v2;
            b[m] = c(u1, u3) * v3;
        }
        const double cross = a[0] * b[1] - a[1] * b[0];
        EXPECT_GT(std::abs(cross), 1e-6) << "theta=" << theta;
    }
}

TEST(IaFeasibility, OnlyTwoCarriers) {
    EXPECT_FALSE(ia_feasibility(ParallelChannel({make_counterexample()[0]})));
}

TEST(TinRate, CounterexampleClosedForm) {
    const auto ch = make_counterexample();
    const auto s = ia_feasibility(ch);
    ASSERT_TRUE(s);
    const auto r = tin_rate(ch, s->with_equal_power(30.0));
    EXPECT_NEAR(r.sum_rate, oracle::counterexample_joint_rate(30.0), 1e-12);
    EXPECT_NEAR(r.sum_rate, 0.75 * std::log2(11.0), 1e-12);
    EXPECT_DOUBLE_EQ(r.snr, 30.0);
    for (double snr : {1e-3, 0.1, 1.0, 7.0, 100.0, 1e4, 1e8}) {
        const auto q = tin_rate(ch, s->with_equal_power(snr));
        EXPECT_NEAR(q.sum_rate, oracle::counterexample_joint_rate(snr), 1e-12) << snr;
        EXPECT_NEAR(q.sum_rate, q.per_user_rate[0] + q.per_user_rate[1] + q.per_user_rate[2], 1e-12);
    }
}

TEST(TinRate, ZeroPower) {
    const auto ch = make_counterexample();
    const auto r = tin_rate(ch, *ia_feasibility(ch));
    EXPECT_EQ(r.sum_rate, 0.0);
    for (double x : r.per_user_rate)
        EXPECT_EQ(x, 0.0);
}

TEST(TinRate, RejectsMismatchedScheme) {
    const auto ch = make_counterexample();
    auto s = ia_feasibility(ch)->with_equal_power(1.0);
    s.v[1] = {1.0};
    EXPECT_THROW(tin_rate(ch, s), std::invalid_argument);
    s = ia_feasibility(ch)->with_equal_power(1.0);
    s.u[0] = {1.0, 1.0};
    EXPECT_THROW(tin_rate(ch, s), std::invalid_argument);
    s = ia_feasibility(ch)->with_equal_power(1.0);
    s.p[2] = -1.0;
    EXPECT_THROW(tin_rate(ch, s), std::invalid_argument);
}

TEST(TinRate, CarrierSwapWithPermutedVectors) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> gain(0.3, 2.0), angle(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 50; ++trial) {
        GainMatrix a, b;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                a[i][j] = gain(rng);
                b[i][j] = -gain(rng);
            }
        BeamformingScheme s;
        for (int k = 0; k < 3; ++k) {
            const double t = angle(rng), r = angle(rng);
            s.v[k] = {std::cos(t), std::sin(t)};
            s.u[k] = {std::cos(r), std::sin(r)};
            s.p[k] = 2.0 + k;
        }
        BeamformingScheme swapped = s;
        for (int k = 0; k < 3; ++k) {
            std::swap(swapped.v[k][0], swapped.v[k][1]);
            std::swap(swapped.u[k][0], swapped.u[k][1]);
        }
        const ParallelChannel ab({SingleCarrierChannel(a), SingleCarrierChannel(b)});
        const ParallelChannel ba({SingleCarrierChannel(b), SingleCarrierChannel(a)});
        EXPECT_NEAR(tin_rate(ab, s).sum_rate, tin_rate(ba, swapped).sum_rate, 1e-12);
    }
}

TEST(TdmaRate, SingleCarrier) {
    const ParallelChannel ch({SingleCarrierChannel(GainMatrix{{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}})});
    const auto r = tdma_rate(ch, User(1), 15.0);
    EXPECT_NEAR(r.sum_rate, 2.0, 1e-12);
    EXPECT_EQ(r.per_user_rate[1], 0.0);
    EXPECT_EQ(r.per_user_rate[2], 0.0);
}

TEST(TdmaRate, CounterexampleEqualSplit) {
    const auto r = tdma_rate(make_counterexample(), User(1), 10.0);
    EXPECT_NEAR(r.sum_rate, 0.5 * std::log2(6.0), 1e-12);
}

TEST(TdmaRate, RandomTwoCarrierMatchesGrid) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> gain(0.2, 4.0), snr(0.1, 50.0);
    for (int trial = 0; trial < 20; ++trial) {
        GainMatrix a{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}, b = a;
        a[1][1] = gain(rng);
        b[1][1] = -gain(rng);
        const double total = snr(rng);
        const double g0 = a[1][1] * a[1][1], g1 = b[1][1] * b[1][1];
        const auto grid = oracle::grid_split([&](double p) { return 0.5 * std::log2(1 + g0 * p); },
                                             [&](double p) { return 0.5 * std::log2(1 + g1 * p); }, total, 1e-4);
        const ParallelChannel ch({SingleCarrierChannel(a), SingleCarrierChannel(b)});
        EXPECT_NEAR(tdma_rate(ch, User(2), total).sum_rate, grid.objective / 2.0, 1e-6);
    }
}

TEST(TdmaRate, BestUserAndBadSnr) {
    const ParallelChannel ch({SingleCarrierChannel(GainMatrix{{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}})});
    const auto best = best_tdma_rate(ch, 3.0);
    EXPECT_NEAR(best.sum_rate, 0.5 * std::log2(1.0 + 100.0 * 3.0), 1e-12);
    EXPECT_GT(best.per_user_rate[2], 0.0);
    EXPECT_THROW(tdma_rate(ch, User(1), -1.0), std::invalid_argument);
}

TEST(Rates, NondecreasingInSnr) {
    const auto ch = make_counterexample();
    const auto s = *ia_feasibility(ch);
    double prev_tin = 0.0, prev_tdma = 0.0;
    for (double db = -30.0; db <= 90.0; db += 2.5) {
        const double snr = std::pow(10.0, db / 10.0);
        const double tin = tin_rate(ch, s.with_equal_power(snr)).sum_rate;
        const double tdma = best_tdma_rate(ch, snr).sum_rate;
        EXPECT_GE(tin, prev_tin);
        EXPECT_GE(tdma, prev_tdma);
        prev_tin = tin;
        prev_tdma = tdma;
    }
}

} // namespace
} // namespace icsep
