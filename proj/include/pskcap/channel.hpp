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

#include "pskcap/channel_model.hpp"
#include "pskcap/modulation.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pskcap
{

inline constexpr double kDefaultSectorTolerance = 1e-12;

// Below this effective SNR capacities come from the low-SNR expansion; the
// quadrature route would only return cancellation noise.
inline constexpr double kTaylorSnrThreshold = 1e-12;

class QuadratureError : public std::runtime_error
{
  public:
    QuadratureError(int sector, double eff_snr, double error_estimate);
    int sector() const noexcept { return sector_; }

  private:
    int sector_;
};

// Row P(y = l | x = 0), l = 0..M-1, of the symmetric channel induced by
// hard detection. Other rows follow by circulant shift.
class TransitionRow
{
  public:
    TransitionRow(ModulationOrder m, std::vector<double> probs, double eff_snr);

    // deviations[l] = probs[l] - 1/M, supplied at full precision by the
    // quadrature route so small-SNR capacities do not cancel.
    TransitionRow(ModulationOrder m, std::vector<double> probs, std::vector<double> deviations, double eff_snr);

    ModulationOrder order() const noexcept { return m_; }
    const std::vector<double> &probs() const noexcept { return probs_; }
    const std::vector<double> &deviations() const noexcept { return deviations_; }
    double eff_snr() const noexcept { return eff_snr_; }

    double operator[](int l) const { return probs_.at(static_cast<std::size_t>(l)); }

    // P(y = l | x = input)
    double transition(int l, int input) const;

  private:
    ModulationOrder m_;
    std::vector<double> probs_;
    std::vector<double> deviations_;
    double eff_snr_;
};

// Density of the received phase given symbol 0, at effective SNR rho:
// rho = SNR (AWGN), |h|^2 SNR (coherent, given h), |d|^2 SNR / (gamma^2 SNR + 1)
// (noncoherent Rician).
double phase_density(double theta, double eff_snr);

// Integrates phase_density over every decision sector; each entry is within
// tol of the exact integral.
TransitionRow transition_row(ModulationOrder m, double eff_snr, double tol = kDefaultSectorTolerance);

// log M + sum_l P_l log P_l in nats, 0 log 0 = 0.
double capacity_dmc(const TransitionRow &row);

// Closed forms at M = 2 and M = 4 (the latter is 2 C2(snr / 2)).
double capacity_closed_binary(double snr);
double capacity_closed_quaternary(double snr);

// capacity_dmc(transition_row(...)) with no closed-form or small-SNR shortcut.
double capacity_quadrature(ModulationOrder m, double eff_snr, double tol = kDefaultSectorTolerance);

// Capacity of the AWGN hard-decision channel at SNR rho. This is the kernel
// every model reduces to.
double capacity_awgn(ModulationOrder m, double eff_snr, double tol = kDefaultSectorTolerance);

// |d|^2 snr / (gamma^2 snr + 1)
double noncoherent_effective_snr(const NoncoherentRicianChannel &channel, double snr);

// Capacity in nats per symbol; for coherent fading, averaged over the law of h.
double capacity(const ChannelModel &model, ModulationOrder m, double snr, double tol = kDefaultSectorTolerance);

// Row seen by the detector at a given transmitted SNR. For coherent fading it
// is the fading average of the per-h rows; note that capacity() is not
// capacity_dmc of this row there, since the receiver knows h.
TransitionRow average_transition_row(const ChannelModel &model, ModulationOrder m, double snr,
                                     double tol = kDefaultSectorTolerance);

} // namespace pskcap
