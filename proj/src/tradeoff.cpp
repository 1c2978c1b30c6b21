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

#include "pskcap/tradeoff.hpp"

#include "pskcap/lowsnr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pskcap
{

namespace
{

constexpr double kLog2e = std::numbers::log2e;
constexpr double kPrescanLo = -8.0; // log10 snr
constexpr double kPrescanHi = 3.0;
constexpr int kPrescanPoints = 200;
constexpr double kGoldenWidth = 1e-7; // decades
constexpr double kCrossingEdge = 1e-3;
constexpr int kCrossingScan = 48;

double eb_db_from(double factor, double snr, double capacity_nats)
{
    if (capacity_nats <= 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(factor * snr / (capacity_nats * kLog2e));
}

double se_at(const ChannelModel &model, ModulationOrder m, double snr)
{
    return capacity(model, m, snr) * kLog2e;
}

} // namespace

TradeoffPoint tradeoff_point(const ChannelModel &model, ModulationOrder m, double snr, double tol)
{
    if (!(snr > 0.0))
        throw std::domain_error("tradeoff_point: SNR must be positive");
    const double c = capacity(model, m, snr, tol);
    return {snr, c, c * kLog2e, eb_db_from(model.received_snr_factor(), snr, c)};
}

std::vector<TradeoffPoint> tradeoff_curve(const ChannelModel &model, ModulationOrder m,
                                          std::span<const double> snr_grid, double tol)
{
    for (std::size_t i = 0; i < snr_grid.size(); ++i)
    {
        if (!(snr_grid[i] > 0.0))
            throw std::domain_error("tradeoff_curve: SNR grid entries must be positive");
        if (i > 0 && !(snr_grid[i] > snr_grid[i - 1]))
            throw std::invalid_argument("tradeoff_curve: SNR grid must be strictly increasing");
    }
    std::vector<TradeoffPoint> out;
    out.reserve(snr_grid.size());
    for (double s : snr_grid)
        out.push_back(tradeoff_point(model, m, s, tol));
    return out;
}

double zero_se_bit_energy_db(const ChannelModel &model, ModulationOrder m)
{
    const LowSnrExpansion e = derivatives_at_zero(model, m);
    return 10.0 * std::log10(model.received_snr_factor() * std::numbers::ln2 / e.cdot0);
}

double wideband_slope(const ChannelModel &model, ModulationOrder m)
{
    const LowSnrExpansion e = derivatives_at_zero(model, m);
    if (e.cddot0.is_infinite())
        return 0.0;
    const double second = e.cddot0.value();
    if (second >= 0.0)
        return std::numeric_limits<double>::infinity();
    return 2.0 * e.cdot0 * e.cdot0 / -second;
}

WidebandSummary wideband_summary(const ChannelModel &model, ModulationOrder m, double search_tol_db, double tol)
{
    if (!(search_tol_db > 0.0))
        throw std::invalid_argument("wideband_summary: search tolerance must be positive");
    WidebandSummary summary{};
    summary.eb0_db = zero_se_bit_energy_db(model, m);
    summary.slope = wideband_slope(model, m);

    const double factor = model.received_snr_factor();
    auto eb_at_log = [&](double x) {
        const double snr = std::pow(10.0, x);
        return eb_db_from(factor, snr, capacity(model, m, snr, tol));
    };

    std::vector<double> xs(kPrescanPoints), eb(kPrescanPoints);
    for (int i = 0; i < kPrescanPoints; ++i)
    {
        xs[i] = kPrescanLo + (kPrescanHi - kPrescanLo) * i / (kPrescanPoints - 1);
        eb[i] = eb_at_log(xs[i]);
    }
    const auto k = static_cast<int>(std::min_element(eb.begin(), eb.end()) - eb.begin());
    if (k == kPrescanPoints - 1)
        throw SearchError("wideband_summary: no bracket for the minimum bit energy in snr [1e-8, 1e3]");
    if (k == 0)
    {
        // Eb/N0 still falling towards zero SNR: the infimum sits at zero SE.
        summary.min_eb_db = std::min(summary.eb0_db, eb[0]);
        summary.se_at_min = 0.0;
        return summary;
    }

    // Golden-section search on [x_{k-1}, x_{k+1}].
    constexpr double inv_phi = 0.6180339887498949;
    double a = xs[k - 1];
    double b = xs[k + 1];
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eb_at_log(c);
    double fd = eb_at_log(d);
    double fa = eb[k - 1];
    double fb = eb[k + 1];
    while (b - a > kGoldenWidth)
    {
        if (std::max(fa, fb) - std::min(fc, fd) < 1e-3 * search_tol_db)
            break;
        if (fc < fd)
        {
            b = d;
            fb = fd;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eb_at_log(c);
        }
        else
        {
            a = c;
            fa = fc;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eb_at_log(d);
        }
    }
    const double x_min = fc < fd ? c : d;
    const double snr_min = std::pow(10.0, x_min);
    const double c_min = capacity(model, m, snr_min, tol);
    summary.min_eb_db = eb_db_from(factor, snr_min, c_min);
    summary.se_at_min = c_min * kLog2e;
    return summary;
}

double inverse_capacity(const ChannelModel &model, ModulationOrder m, double target_se, double tol)
{
    const double max_se = std::log2(static_cast<double>(m.count()));
    if (!(target_se > 0.0 && target_se < max_se))
        throw std::domain_error("inverse_capacity: target spectral efficiency outside (0, log2 M)");
    if (!(tol > 0.0))
        throw std::invalid_argument("inverse_capacity: tolerance must be positive");

    double lo = 1.0;
    double hi = 1.0;
    while (se_at(model, m, lo) >= target_se)
    {
        lo *= 0.5;
        if (lo < 1e-300)
            throw std::domain_error("inverse_capacity: target below the reachable range");
    }
    while (se_at(model, m, hi) <= target_se)
    {
        hi *= 2.0;
        if (hi > 1e15)
            throw std::domain_error("inverse_capacity: target above the reachable range");
    }

    double mid = std::sqrt(lo * hi);
    for (int iter = 0; iter < 400; ++iter)
    {
        mid = std::sqrt(lo * hi);
        const double se = se_at(model, m, mid);
        if (std::abs(se - target_se) < tol)
            break;
        if (se < target_se)
            lo = mid;
        else
            hi = mid;
        if (hi / lo - 1.0 < 4.0 * std::numeric_limits<double>::epsilon())
            break;
    }
    return mid;
}

double eb_n0_db_at_se(const ChannelModel &model, ModulationOrder m, double se, double tol)
{
    const double snr = inverse_capacity(model, m, se, tol);
    return 10.0 * std::log10(model.received_snr_factor() * snr / se);
}

std::optional<double> crossing_bit_energy(const ChannelModel &model_a, ModulationOrder m_a,
                                          const ChannelModel &model_b, ModulationOrder m_b)
{
    const double lo = kCrossingEdge;
    const double hi = std::min(std::log2(static_cast<double>(m_a.count())),
                               std::log2(static_cast<double>(m_b.count()))) -
                      kCrossingEdge;
    auto gap = [&](double se) { return eb_n0_db_at_se(model_a, m_a, se) - eb_n0_db_at_se(model_b, m_b, se); };

    double prev_se = lo;
    double prev_gap = gap(lo);
    for (int i = 1; i < kCrossingScan; ++i)
    {
        const double se = lo + (hi - lo) * i / (kCrossingScan - 1);
        const double g = gap(se);
        if (prev_gap * g < 0.0)
        {
            double a = prev_se;
            double b = se;
            double ga = prev_gap;
            while (b - a > 1e-10)
            {
                const double mid = 0.5 * (a + b);
                const double gm = gap(mid);
                if (gm == 0.0)
                    return mid;
                if ((gm < 0.0) == (ga < 0.0))
                {
                    a = mid;
                    ga = gm;
                }
                else
                    b = mid;
            }
            return 0.5 * (a + b);
        }
        prev_se = se;
        prev_gap = g;
    }
    return std::nullopt;
}

double linear_se_approximation(const WidebandSummary &summary, double eb_n0_db)
{
    if (eb_n0_db <= summary.eb0_db)
        return 0.0;
    return summary.slope * (eb_n0_db - summary.eb0_db) / (10.0 * std::log10(2.0));
}

} // namespace pskcap
