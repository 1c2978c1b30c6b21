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

#include <catch_amalgamated.hpp>

#include "pskcap/report.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace pskcap;

TEST_CASE("number formatting")
{
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(format_number(0.5) == "0.5");
    CHECK(std::isinf(parse_number("inf")));
    CHECK(parse_number("-inf") < 0.0);
    CHECK(parse_number("0.1") == 0.1);
    CHECK_THROWS(parse_number("abc"));
    CHECK_THROWS(parse_number("1.5x"));

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> expo(-300.0, 300.0);
    for (int i = 0; i < 10000; ++i)
    {
        const double v = std::pow(10.0, expo(gen)) * (i % 2 ? 1.0 : -1.0);
        REQUIRE(parse_number(format_number(v)) == v);
    }
    CHECK(parse_number(format_number(std::numeric_limits<double>::denorm_min())) ==
          std::numeric_limits<double>::denorm_min());
    CHECK(std::abs(from_db(to_db(3.7)) - 3.7) < 1e-15);
    CHECK(to_db(10.0) == 10.0);
}

namespace
{
TradeoffCurve sample_curve(int m)
{
    const auto awgn = ChannelModel::awgn();
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i)
        grid.push_back(from_db(-30.0 + 4.0 * i));
    return {m, tradeoff_curve(awgn, ModulationOrder(m), grid)};
}
} // namespace

TEST_CASE("CSV output")
{
    const auto curve = sample_curve(8);
    std::ostringstream os;
    write_tradeoff_csv(os, curve.points);
    const std::string text = os.str();
    CHECK(text.substr(0, text.find('\n')) == kTradeoffCsvHeader);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(curve.points.size() + 1));

    std::istringstream is(text);
    const auto back = read_tradeoff_csv(is);
    REQUIRE(back.size() == curve.points.size());
    for (std::size_t i = 0; i < back.size(); ++i)
    {
        CHECK(back[i].snr == curve.points[i].snr);
        CHECK(back[i].capacity_nats == curve.points[i].capacity_nats);
        CHECK(back[i].spectral_efficiency == curve.points[i].spectral_efficiency);
        CHECK(back[i].eb_n0_db == curve.points[i].eb_n0_db);
    }

    std::istringstream bad("snr,capacity\n1,2\n");
    CHECK_THROWS(read_tradeoff_csv(bad));
}

TEST_CASE("JSON report round trip")
{
    TradeoffReport report{"awgn", {sample_curve(2), sample_curve(3), sample_curve(16)}};
    report.curves[1].points[0].eb_n0_db = INFINITY;
    const auto j = to_json(report);
    const auto text = j.dump();
    const auto back = tradeoff_report_from_json(nlohmann::json::parse(text));
    CHECK(back == report);
    CHECK(j["curves"][1]["points"][0]["eb_n0_db"] == "inf");

    CHECK(json_to_number(json_number(INFINITY)) == INFINITY);
    CHECK(json_to_number(json_number(0.1)) == 0.1);
    CHECK_THROWS(tradeoff_report_from_json(nlohmann::json::parse(R"({"channel": "awgn"})")));
}
