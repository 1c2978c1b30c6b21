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

#include <string>

namespace pskcap
{

// Real number or +infinity. The second capacity derivative of 3-PSK at zero
// SNR is exactly infinite, and downstream formulas branch on that.
class ExtendedReal
{
  public:
    static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
    static ExtendedReal positive_infinity() { return ExtendedReal(0.0, true); }

    bool is_infinite() const noexcept { return infinite_; }
    // Throws std::logic_error when infinite.
    double value() const;
    // IEEE double, +inf when infinite.
    double as_double() const noexcept;

    ExtendedReal scaled(double factor) const;
    ExtendedReal plus(double offset) const;

    // "inf" or the value with 17 significant digits.
    std::string to_string() const;

    bool operator==(const ExtendedReal &) const = default;

  private:
    ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}

    double value_;
    bool infinite_;
};

// Low-SNR behaviour of the capacity. phi1..phi3 are the expansion
// coefficients C(s) = phi1 s + phi2 s^{3/2} + phi3 s^2 + o(s^2) in the
// transmitted SNR s of the given model; cdot0 and cddot0 are the first and
// second derivatives at s = 0 in nats.
struct LowSnrExpansion
{
    ModulationOrder m;
    ChannelModel model;
    double phi1;
    double phi2;
    double phi3;
    double cdot0;
    ExtendedReal cddot0;
};

// Expansion coefficients of the AWGN capacity, evaluated as trigonometric
// sums over the constellation.
double phi1(ModulationOrder m);
double phi2(ModulationOrder m);
double phi3(ModulationOrder m);

// Second-derivative kernel for M >= 5; throws std::domain_error below.
double psi(ModulationOrder m);

// First derivative at zero SNR in closed form: 2/pi for M = 2, M^2/(4 pi) sin^2(pi/M) otherwise.
double first_derivative_closed(ModulationOrder m);

// AWGN second derivative at zero SNR by branch (M = 2, 3, 4, >= 5).
ExtendedReal second_derivative_closed(ModulationOrder m);

LowSnrExpansion derivatives_at_zero(const ChannelModel &model, ModulationOrder m);

struct AsymptoticLimits
{
    double cdot;
    double cddot;
};

// M -> infinity limits of the two derivatives.
AsymptoticLimits asymptotic_limits(const ChannelModel &model);

// phi1 s + phi2 s^{3/2} + phi3 s^2 with the model's coefficients.
double taylor_capacity(ModulationOrder m, const ChannelModel &model, double snr);

// The AWGN expansion at effective SNR rho.
double taylor_capacity_awgn(ModulationOrder m, double eff_snr);

} // namespace pskcap
