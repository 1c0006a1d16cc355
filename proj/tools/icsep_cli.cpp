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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "icsep/icsep.hpp"
#include "icsep/io.hpp"

namespace {

using icsep::format_number;

struct ChannelSource {
    std::string path;
    std::string builtin;

    void attach(CLI::App* cmd) {
        auto* file = cmd->add_option("--channel", path, "channel JSON file");
        auto* named = cmd->add_option("--builtin", builtin, "built-in channel")->check(CLI::IsMember({"counterexample"}));
        file->excludes(named);
    }

    icsep::ParallelChannel load() const {
        if (!builtin.empty())
            return icsep::make_counterexample();
        if (path.empty())
            throw std::invalid_argument("no channel given: pass --channel <path> or --builtin counterexample");
        return icsep::load_channel(path);
    }
};

icsep::Link parse_link(const std::string& text) {
    int rx = 0, tx = 0;
    char sep = 0, extra = 0;
    if (std::sscanf(text.c_str(), "%d%c%d%c", &rx, &sep, &tx, &extra) != 3 || sep != ',')
        throw std::invalid_argument("malformed position '" + text + "', expected i,j");
    if (rx == tx)
        throw std::invalid_argument("position '" + text + "' is on the diagonal");
    return {icsep::User(rx), icsep::User(tx)};
}

void print_matrix(std::ostream& out, const icsep::SingleCarrierChannel& c) {
    for (std::size_t i = 0; i < icsep::kUsers; ++i) {
        out << "    [";
        for (std::size_t j = 0; j < icsep::kUsers; ++j)
            out << (j ? ", " : "") << format_number(c.at(i, j));
        out << "]\n";
    }
}

std::string dof_list(const std::vector<icsep::CarrierDof>& dofs) {
    std::string s = "[";
    for (std::size_t m = 0; m < dofs.size(); ++m)
        s += (m ? ", " : "") + std::string(icsep::to_string(dofs[m]));
    return s + "]";
}

int run_check(const ChannelSource& src, double tol) {
    const auto ch = src.load();
    const auto v = icsep::validate(ch);
    if (!v) {
        for (const auto& bad : v.bad)
            std::cerr << "error: " << icsep::describe(bad) << '\n';
        return 1;
    }
    std::cout << "carriers: " << ch.size() << '\n';
    for (std::size_t m = 0; m < ch.size(); ++m) {
        std::cout << "carrier " << m + 1 << ": valid\n";
        if (auto w = icsep::singularity_check(ch[m], tol))
            std::cout << "  witness (i,j,k) = (" << w->i.id() << "," << w->j.id() << "," << w->k.id()
                      << "), gamma = " << format_number(w->gamma) << '\n';
        else
            std::cout << "  no witness\n";
    }
    std::cout << "per-carrier dof: " << dof_list(icsep::per_carrier_dof(ch, tol)) << '\n';
    return 0;
}

int run_sweep(const ChannelSource& src, double start, double stop, double step, const std::string& output) {
    const auto ch = src.load();
    const auto rows = icsep::sweep(ch, icsep::db_grid(start, stop, step));
    if (!rows.empty() && !rows.front().separate_outer)
        std::cerr << "note: separate_outer omitted; channel has no known separate-encoding bound\n";
    if (output.empty() || output == "-") {
        icsep::write_sweep_csv(std::cout, rows);
        return 0;
    }
    std::ofstream out(output);
    if (!out)
        throw std::runtime_error("cannot write " + output);
    icsep::write_sweep_csv(out, rows);
    if (!out)
        throw std::runtime_error("write failed for " + output);
    return 0;
}

int run_bound_mac(double h, const std::vector<double>& snrs, bool oracle) {
    for (double snr : snrs) {
        const auto r = icsep::mac_bound_optimize(h, snr);
        std::cout << "h=" << format_number(h) << " snr=" << format_number(snr) << " bound=" << format_number(r.value)
                  << " a1=" << format_number(r.params.a1) << " sigma=" << format_number(r.params.sigma)
                  << " rho=" << format_number(r.params.rho);
        if (oracle) {
            const auto g = icsep::mac_bound_dense_grid(h, snr);
            std::cout << " oracle=" << format_number(g.value) << " gap=" << format_number(r.value - g.value);
        }
        std::cout << '\n';
    }
    return 0;
}

int run_game(const ChannelSource& src, const std::vector<std::string>& coeffs, const std::string& same) {
    const auto ch = src.load();
    std::vector<icsep::Link> links;
    if (!same.empty()) {
        if (!coeffs.empty())
            throw std::invalid_argument("--coeff and --same-coefficient are exclusive");
        links.assign(ch.size(), parse_link(same));
    } else {
        for (const auto& c : coeffs)
            links.push_back(parse_link(c));
    }

    const auto g = icsep::play_game(ch, links);
    for (std::size_t m = 0; m < g.modified_channel.size(); ++m) {
        std::cout << "carrier " << m + 1 << " (player 2 sets h" << links[m].rx.id() << links[m].tx.id() << "):\n";
        print_matrix(std::cout, g.modified_channel[m]);
    }
    std::cout << "per-carrier dof: " << dof_list(g.per_carrier_dof) << '\n'
              << "alignment: " << (g.aligned ? "feasible" : "infeasible (tdma fallback)") << '\n'
              << "joint dof estimate: " << format_number(g.joint_dof_estimate) << '\n'
              << "winner: " << icsep::to_string(g.winner) << '\n';
    return 0;
}

int run_alloc(const ChannelSource& src, const std::vector<double>& gains, double total) {
    std::vector<icsep::CarrierObjective> f;
    if (!gains.empty()) {
        for (double g : gains) {
            if (!(g > 0.0))
                throw std::invalid_argument("--gain values must be positive");
            f.emplace_back([g](double p) { return icsep::half_log2_1p(g * p); });
        }
    } else {
        const auto ch = src.load();
        for (std::size_t m = 0; m < ch.size(); ++m) {
            const auto mag = icsep::example1_magnitude(ch[m]);
            if (!mag)
                throw icsep::NoSeparateBound(m);
            const double g = *mag * *mag;
            f.emplace_back([g](double p) { return icsep::half_log2_1p(g * p); });
        }
    }

    const auto alloc = icsep::allocate_power(f, total);
    double objective = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m) {
        objective += f[m](alloc.per_carrier[m]);
        std::cout << "carrier " << m + 1 << ": " << format_number(alloc.per_carrier[m]) << '\n';
    }
    std::cout << "objective: " << format_number(objective) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"icsep: rates, outerbounds and separability diagnostics for 3-user Gaussian interference channels"};
    app.require_subcommand(1);

    ChannelSource check_src, sweep_src, game_src, alloc_src;
    double tol = icsep::kSingularityTol;
    auto* check = app.add_subcommand("check", "validate a channel and report singularity witnesses");
    check_src.attach(check);
    check->add_option("--tol", tol, "relative singularity tolerance")->check(CLI::PositiveNumber);

    double start = 0.0, stop = 50.0, step = 5.0;
    std::string output;
    auto* sw = app.add_subcommand("sweep", "joint vs separate coding over an SNR grid, as CSV");
    sweep_src.attach(sw);
    sw->add_option("--snr-db-start", start, "first grid point (dB)");
    sw->add_option("--snr-db-stop", stop, "last grid point (dB)");
    sw->add_option("--snr-db-step", step, "grid spacing (dB)")->check(CLI::PositiveNumber);
    sw->add_option("--output", output, "CSV path (stdout if omitted)");

    double h = 2.0;
    std::vector<double> snrs{10.0};
    bool oracle = false;
    auto* mac = app.add_subcommand("bound-mac", "genie-aided MAC outerbound for the symmetric channel");
    mac->add_option("--cross-gain", h, "cross gain (must exceed 1)");
    mac->add_option("--snr", snrs, "linear SNR values")->delimiter(',');
    mac->add_flag("--oracle", oracle, "compare against the dense grid search");

    std::vector<std::string> coeffs;
    std::string same;
    auto* game = app.add_subcommand("game", "player 2 best-responds on one coefficient per carrier");
    game_src.attach(game);
    game->add_option("--coeff", coeffs, "controlled position i,j (one per carrier, in order)");
    game->add_option("--same-coefficient", same, "control position i,j on every carrier");

    std::vector<double> gains;
    double total = 10.0;
    auto* alloc = app.add_subcommand("alloc", "power allocation over per-carrier concave bounds");
    alloc_src.attach(alloc);
    alloc->add_option("--gain", gains, "carrier gain g for bound (1/2)log2(1+g p)")->delimiter(',');
    alloc->add_option("--total", total, "total linear power")->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check)
            return run_check(check_src, tol);
        if (*sw)
            return run_sweep(sweep_src, start, stop, step, output);
        if (*mac)
            return run_bound_mac(h, snrs, oracle);
        if (*game)
            return run_game(game_src, coeffs, same);
        if (*alloc)
            return run_alloc(alloc_src, gains, total);
    } catch (const icsep::InvalidChannel& e) {
        for (const auto& bad : e.issues())
            std::cerr << "error: " << icsep::describe(bad) << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
