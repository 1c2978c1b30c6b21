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

#include "pskcap/channel.hpp"
#include "pskcap/channel_model.hpp"
#include "pskcap/modulation.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pskcap
{

// One symbol per 1 s x 1 Hz slot, so spectral efficiency is the capacity in
// bits. Bit energies are received bit energies: the transmitted SNR is
// scaled by ChannelModel::received_snr_factor().
struct TradeoffPoint
{
    double snr;
    double capacity_nats;
    double spectral_efficiency; // bits/s/Hz
    double eb_n0_db;
};

struct WidebandSummary
{
    double eb0_db;    // bit energy at zero spectral efficiency
    double slope;     // bits/s/Hz per 3 dB at zero spectral efficiency
    double min_eb_db; // minimum over the whole curve
    double se_at_min; // spectral efficiency where the minimum is reached
};

class SearchError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultSearchTolDb = 1e-4;
inline constexpr double kDefaultInverseTol = 1e-12;

TradeoffPoint tradeoff_point(const ChannelModel &model, ModulationOrder m, double snr,
                             double tol = kDefaultSectorTolerance);

// snr_grid must be positive and strictly increasing.
std::vector<TradeoffPoint> tradeoff_curve(const ChannelModel &model, ModulationOrder m,
                                          std::span<const double> snr_grid, double tol = kDefaultSectorTolerance);

// 10 log10(received factor * ln 2 / Cdot(0)).
double zero_se_bit_energy_db(const ChannelModel &model, ModulationOrder m);

// 2 Cdot(0)^2 / -Cddot(0), zero when Cddot(0) = +inf.
double wideband_slope(const ChannelModel &model, ModulationOrder m);

// The minimum is located by a 200-point prescan of log10(snr) over
// [1e-8, 1e3] followed by golden-section refinement.
WidebandSummary wideband_summary(const ChannelModel &model, ModulationOrder m,
                                 double search_tol_db = kDefaultSearchTolDb, double tol = kDefaultSectorTolerance);

// SNR at which the spectral efficiency equals target_se (bits/s/Hz), found by
// bisection on log SNR. Throws std::domain_error unless 0 < target_se < log2 M.
double inverse_capacity(const ChannelModel &model, ModulationOrder m, double target_se,
                        double tol = kDefaultInverseTol);

// Received Eb/N0 in dB needed to reach spectral efficiency se.
double eb_n0_db_at_se(const ChannelModel &model, ModulationOrder m, double se, double tol = kDefaultInverseTol);

// Spectral efficiency at which the Eb/N0-vs-SE curves of two schemes
// intersect, searched over [1e-3, min(log2 MA, log2 MB) - 1e-3]. Returns the
// first crossing, or nullopt when the curves never change order there.
std::optional<double> crossing_bit_energy(const ChannelModel &model_a, ModulationOrder m_a,
                                          const ChannelModel &model_b, ModulationOrder m_b);

// S0 (Eb - Eb0) / (10 log10 2), zero below Eb0.
double linear_se_approximation(const WidebandSummary &summary, double eb_n0_db);

} // namespace pskcap
