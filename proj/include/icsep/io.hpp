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

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "icsep/channel.hpp"
#include "icsep/sweep.hpp"

namespace icsep {

class ChannelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace detail

/// Parses {"carriers": [{"h": [[h11,h12,h13],[h21,h22,h23],[h31,h32,h33]]}, ...]}.
/// Gains are not validated here; see validate().
inline ParallelChannel parse_channel(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        throw ChannelFormatError("channel file: malformed JSON at " + detail::line_col(text, at));
    }

    if (!doc.is_object() || !doc.contains("carriers"))
        throw ChannelFormatError("channel file: expected an object with a \"carriers\" array");
    const auto& list = doc.at("carriers");
    if (!list.is_array() || list.empty())
        throw ChannelFormatError("channel file: \"carriers\" must be a non-empty array");

    std::vector<SingleCarrierChannel> carriers;
    for (std::size_t m = 0; m < list.size(); ++m) {
        const std::string where = "carriers[" + std::to_string(m) + "]";
        const auto& entry = list[m];
        if (!entry.is_object() || !entry.contains("h"))
            throw ChannelFormatError("channel file: " + where + " must be an object with field \"h\"");
        const auto& rows = entry.at("h");
        if (!rows.is_array() || rows.size() != kUsers)
            throw ChannelFormatError("channel file: " + where + ".h must have 3 rows");
        GainMatrix h{};
        for (std::size_t i = 0; i < kUsers; ++i) {
            if (!rows[i].is_array() || rows[i].size() != kUsers)
                throw ChannelFormatError("channel file: " + where + ".h[" + std::to_string(i) +
                                         "] must have 3 entries");
            for (std::size_t j = 0; j < kUsers; ++j) {
                const auto& v = rows[i][j];
                if (!v.is_number())
                    throw ChannelFormatError("channel file: " + where + ".h[" + std::to_string(i) + "][" +
                                             std::to_string(j) + "] is not a number");
                h[i][j] = v.get<double>();
            }
        }
        carriers.emplace_back(h);
    }
    return ParallelChannel(std::move(carriers));
}

inline ParallelChannel load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ChannelFormatError("cannot open channel file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_channel(buf.str());
}

inline nlohmann::json to_json(const ParallelChannel& ch) {
    nlohmann::json carriers = nlohmann::json::array();
    for (const auto& c : ch.carriers())
        carriers.push_back({{"h", c.gains()}});
    return {{"carriers", carriers}};
}

/// Nine significant digits, '.' decimal separator, independent of locale.
inline std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
    if (res.ec != std::errc())
        throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, res.ptr);
}

inline constexpr std::string_view kSweepCsvHeader = "snr_db,joint_tin,separate_outer,tdma,scheme_note";

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.snr_db) << ',' << format_number(r.joint_tin) << ','
            << (r.separate_outer ? format_number(*r.separate_outer) : std::string()) << ','
            << format_number(r.tdma) << ',' << r.scheme_note << '\n';
    }
}

} // namespace icsep
