// SPDX-License-Identifier: Apache-2.0
//
// pskcap - capacity of hard-decision detected PSK in the low-SNR regime
// Copyright (C) 2026 The pskcap Authors
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

#include "pskcap/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pskcap
{

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text)
{
    if (text == "inf")
        return std::numeric_limits<double>::infinity();
    if (text == "-inf")
        return -std::numeric_limits<double>::infinity();
    if (text == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return v;
}

double to_db(double ratio)
{
    return 10.0 * std::log10(ratio);
}

double from_db(double db)
{
    return std::pow(10.0, db / 10.0);
}

bool TradeoffReport::operator==(const TradeoffReport &o) const
{
    if (channel != o.channel || curves.size() != o.curves.size())
        return false;
    for (std::size_t c = 0; c < curves.size(); ++c)
    {
        const auto &a = curves[c];
        const auto &b = o.curves[c];
        if (a.m != b.m || a.points.size() != b.points.size())
            return false;
        for (std::size_t i = 0; i < a.points.size(); ++i)
        {
            const auto &p = a.points[i];
            const auto &q = b.points[i];
            if (p.snr != q.snr || p.capacity_nats != q.capacity_nats ||
                p.spectral_efficiency != q.spectral_efficiency || p.eb_n0_db != q.eb_n0_db)
                return false;
        }
    }
    return true;
}

void write_tradeoff_csv(std::ostream &os, std::span<const TradeoffPoint> points)
{
    os << kTradeoffCsvHeader << '\n';
    for (const auto &p : points)
    {
        os << format_number(p.snr) << ',' << format_number(to_db(p.snr)) << ',' << format_number(p.capacity_nats)
           << ',' << format_number(p.spectral_efficiency) << ',' << format_number(p.spectral_efficiency) << ','
           << format_number(p.eb_n0_db) << '\n';
    }
}

std::vector<TradeoffPoint> read_tradeoff_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != kTradeoffCsvHeader)
        throw std::invalid_argument("tradeoff CSV: unexpected header");
    std::vector<TradeoffPoint> points;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        std::vector<double> fields;
        std::string_view rest(line);
        for (;;)
        {
            const auto comma = rest.find(',');
            fields.push_back(parse_number(rest.substr(0, comma)));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 6)
            throw std::invalid_argument("tradeoff CSV: expected 6 fields, got " + std::to_string(fields.size()));
        points.push_back({fields[0], fields[2], fields[4], fields[5]});
    }
    return points;
}

nlohmann::json json_number(double v)
{
    if (std::isfinite(v))
        return v;
    return format_number(v);
}

double json_to_number(const nlohmann::json &j)
{
    if (j.is_string())
        return parse_number(j.get<std::string>());
    return j.get<double>();
}

nlohmann::json to_json(const TradeoffReport &report)
{
    nlohmann::json curves = nlohmann::json::array();
    for (const auto &c : report.curves)
    {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto &p : c.points)
            pts.push_back({{"snr", json_number(p.snr)},
                           {"snr_db", json_number(to_db(p.snr))},
                           {"capacity_nats", json_number(p.capacity_nats)},
                           {"capacity_bits", json_number(p.spectral_efficiency)},
                           {"spectral_efficiency_bps_hz", json_number(p.spectral_efficiency)},
                           {"eb_n0_db", json_number(p.eb_n0_db)}});
        curves.push_back({{"m", c.m}, {"points", std::move(pts)}});
    }
    return {{"command", "tradeoff"}, {"channel", report.channel}, {"curves", std::move(curves)}};
}

TradeoffReport tradeoff_report_from_json(const nlohmann::json &j)
{
    TradeoffReport report;
    report.channel = j.at("channel").get<std::string>();
    for (const auto &c : j.at("curves"))
    {
        TradeoffCurve curve{c.at("m").get<int>(), {}};
        for (const auto &p : c.at("points"))
            curve.points.push_back({json_to_number(p.at("snr")), json_to_number(p.at("capacity_nats")),
                                    json_to_number(p.at("spectral_efficiency_bps_hz")),
                                    json_to_number(p.at("eb_n0_db"))});
        report.curves.push_back(std::move(curve));
    }
    return report;
}

} // namespace pskcap
