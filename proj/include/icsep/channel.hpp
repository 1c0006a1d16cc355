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
#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace icsep {

inline constexpr std::size_t kUsers = 3;

/// Zero tolerance used by validate(): entries with |h| <= this are rejected.
inline constexpr double kZeroGainTol = 1e-12;

/// Default relative tolerance of the singularity detector.
inline constexpr double kSingularityTol = 1e-9;

/// Rounding-floor tolerance used by the exact detector mode. Two ratios that
/// agree in real arithmetic can differ by at most a few ulps once each
/// division (and any stored quotient) is rounded.
inline constexpr double kExactRatioTol = 4.0 * std::numeric_limits<double>::epsilon();

/// A user label in {1, 2, 3}.
class User {
public:
    constexpr explicit User(int id) : id_(id) {
        if (id < 1 || id > static_cast<int>(kUsers))
            throw std::out_of_range("user index must be in {1,2,3}, got " + std::to_string(id));
    }

    constexpr int id() const { return id_; }
    constexpr std::size_t index() const { return static_cast<std::size_t>(id_ - 1); }

    static constexpr User from_index(std::size_t index) { return User(static_cast<int>(index) + 1); }

    constexpr auto operator<=>(const User&) const = default;

private:
    int id_;
};

/// Directed link from transmitter `tx` to receiver `rx`, i.e. entry h[rx][tx].
struct Link {
    User rx;
    User tx;

    constexpr bool off_diagonal() const { return rx != tx; }
    constexpr auto operator<=>(const Link&) const = default;
};

using GainMatrix = std::array<std::array<double, kUsers>, kUsers>;

/// Real 3x3 gain matrix of one carrier; row = receiver, column = transmitter.
class SingleCarrierChannel {
public:
    constexpr explicit SingleCarrierChannel(const GainMatrix& h) : h_(h) {}

    constexpr double operator()(User rx, User tx) const { return h_[rx.index()][tx.index()]; }
    constexpr double at(std::size_t rx, std::size_t tx) const { return h_[rx][tx]; }
    constexpr const GainMatrix& gains() const { return h_; }

    constexpr SingleCarrierChannel with_gain(Link link, double value) const {
        GainMatrix h = h_;
        h[link.rx.index()][link.tx.index()] = value;
        return SingleCarrierChannel(h);
    }

    friend constexpr bool operator==(const SingleCarrierChannel&, const SingleCarrierChannel&) = default;

private:
    GainMatrix h_;
};

/// Offending entry reported by validation; `carrier` is 0-based.
struct InvalidGain {
    std::size_t carrier;
    Link link;
    double value;
};

std::string describe(const InvalidGain& bad);

struct Validation {
    std::vector<InvalidGain> bad;

    bool ok() const { return bad.empty(); }
    explicit operator bool() const { return ok(); }
};

class InvalidChannel : public std::invalid_argument {
public:
    explicit InvalidChannel(const Validation& v) : std::invalid_argument(message(v)), issues_(v.bad) {}

    const std::vector<InvalidGain>& issues() const { return issues_; }

private:
    static std::string message(const Validation& v) {
        std::string msg = "invalid channel:";
        for (const auto& b : v.bad)
            msg += " " + describe(b) + ";";
        return msg;
    }

    std::vector<InvalidGain> issues_;
};

inline std::string describe(const InvalidGain& bad) {
    std::string what = std::isfinite(bad.value) ? "zero gain" : "non-finite gain";
    return what + " at carrier " + std::to_string(bad.carrier + 1) + ", (" + std::to_string(bad.link.rx.id()) + "," +
           std::to_string(bad.link.tx.id()) + ")";
}

/// Ordered list of M >= 1 carriers. Carrier m holds the m-th diagonal entries
/// of all nine diagonal matrices H_ij.
class ParallelChannel {
public:
    explicit ParallelChannel(std::vector<SingleCarrierChannel> carriers) : carriers_(std::move(carriers)) {
        if (carriers_.empty())
            throw std::invalid_argument("parallel channel needs at least one carrier");
    }

    std::size_t size() const { return carriers_.size(); }
    const SingleCarrierChannel& operator[](std::size_t m) const { return carriers_[m]; }
    const std::vector<SingleCarrierChannel>& carriers() const { return carriers_; }

    /// Diagonal of H_{rx,tx}: the gain of that link on every carrier.
    std::vector<double> diagonal(User rx, User tx) const {
        std::vector<double> d;
        d.reserve(carriers_.size());
        for (const auto& c : carriers_)
            d.push_back(c(rx, tx));
        return d;
    }

    friend bool operator==(const ParallelChannel&, const ParallelChannel&) = default;

private:
    std::vector<SingleCarrierChannel> carriers_;
};

inline Validation validate(const SingleCarrierChannel& ch, double zero_tol = kZeroGainTol, std::size_t carrier = 0) {
    Validation v;
    for (std::size_t i = 0; i < kUsers; ++i)
        for (std::size_t j = 0; j < kUsers; ++j) {
            const double g = ch.at(i, j);
            if (!std::isfinite(g) || std::abs(g) <= zero_tol)
                v.bad.push_back({carrier, {User::from_index(i), User::from_index(j)}, g});
        }
    return v;
}

inline Validation validate(const ParallelChannel& ch, double zero_tol = kZeroGainTol) {
    Validation v;
    for (std::size_t m = 0; m < ch.size(); ++m) {
        auto part = validate(ch[m], zero_tol, m);
        v.bad.insert(v.bad.end(), part.bad.begin(), part.bad.end());
    }
    return v;
}

template <typename Channel>
void require_valid(const Channel& ch) {
    if (auto v = validate(ch); !v)
        throw InvalidChannel(v);
}

/// Triple (i, j, k) for which h[i][j]/h[i][i] == h[k][j]/h[k][i] == gamma.
struct SingularityWitness {
    User i;
    User j;
    User k;
    double gamma;
};

namespace detail {

inline bool ratios_match(double a, double b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) <= tol * scale;
}

} // namespace detail

/// Every witness of the single-carrier DoF collapse condition, in
/// lexicographic (i, j, k) order.
inline std::vector<SingularityWitness> singularity_witnesses(const SingleCarrierChannel& ch,
                                                            double tol = kSingularityTol) {
    if (!(tol >= 0.0))
        throw std::invalid_argument("singularity tolerance must be nonnegative");
    require_valid(ch);

    std::vector<SingularityWitness> out;
    for (std::size_t i = 0; i < kUsers; ++i)
        for (std::size_t j = 0; j < kUsers; ++j)
            for (std::size_t k = 0; k < kUsers; ++k) {
                if (i == j || j == k || i == k)
                    continue;
                const double lhs = ch.at(i, j) / ch.at(i, i);
                const double rhs = ch.at(k, j) / ch.at(k, i);
                if (detail::ratios_match(lhs, rhs, tol))
                    out.push_back({User::from_index(i), User::from_index(j), User::from_index(k), lhs});
            }
    return out;
}

/// First witness in lexicographic (i, j, k) order, if any.
inline std::optional<SingularityWitness> singularity_check(const SingleCarrierChannel& ch,
                                                          double tol = kSingularityTol) {
    auto all = singularity_witnesses(ch, tol);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

inline std::optional<SingularityWitness> singularity_check_exact(const SingleCarrierChannel& ch) {
    return singularity_check(ch, kExactRatioTol);
}

/// The two-carrier channel on which separate coding loses half a degree of
/// freedom: all cross gains 1, direct gains (1, 1, -1) on carrier 1 and
/// (-1, -1, 1) on carrier 2.
inline ParallelChannel make_counterexample() {
    const SingleCarrierChannel first(GainMatrix{{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, -1.0}}});
    const SingleCarrierChannel second(GainMatrix{{{-1.0, 1.0, 1.0}, {1.0, -1.0, 1.0}, {1.0, 1.0, 1.0}}});
    return ParallelChannel({first, second});
}

enum class CarrierDof { one, unknown };

inline const char* to_string(CarrierDof d) { return d == CarrierDof::one ? "1" : "unknown"; }

/// 1 where a singularity witness exists; otherwise nothing is claimed.
inline std::vector<CarrierDof> per_carrier_dof(const ParallelChannel& ch, double tol = kSingularityTol) {
    require_valid(ch);
    std::vector<CarrierDof> out;
    out.reserve(ch.size());
    for (const auto& c : ch.carriers())
        out.push_back(singularity_check(c, tol) ? CarrierDof::one : CarrierDof::unknown);
    return out;
}

} // namespace icsep
