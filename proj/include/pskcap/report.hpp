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

#pragma once

#include "pskcap/tradeoff.hpp"

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pskcap
{

inline constexpr std::string_view kTradeoffCsvHeader =
    "snr,snr_db,capacity_nats,capacity_bits,spectral_efficiency_bps_hz,eb_n0_db";

// 17 significant digits, '.' as decimal separator whatever the locale;
// infinities as "inf" / "-inf".
std::string format_number(double v);
double parse_number(std::string_view text);

double to_db(double ratio);
double from_db(double db);

struct TradeoffCurve
{
    int m;
    std::vector<TradeoffPoint> points;
};

struct TradeoffReport
{
    std::string channel;
    std::vector<TradeoffCurve> curves;

    bool operator==(const TradeoffReport &) const;
};

void write_tradeoff_csv(std::ostream &os, std::span<const TradeoffPoint> points);
std::vector<TradeoffPoint> read_tradeoff_csv(std::istream &is);

nlohmann::json to_json(const TradeoffReport &report);
TradeoffReport tradeoff_report_from_json(const nlohmann::json &j);

// Numbers as JSON numbers, non-finite values as strings.
nlohmann::json json_number(double v);
double json_to_number(const nlohmann::json &j);

} // namespace pskcap
