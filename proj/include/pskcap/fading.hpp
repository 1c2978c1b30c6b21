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

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace pskcap
{

struct RayleighFading
{
    double mean_square = 1.0;
};

struct RicianFading
{
    double k_factor = 1.0;
    double mean_square = 1.0;
};

struct EmpiricalFading
{
    std::vector<double> magnitudes;
};

// Distribution of the fading coefficient h of a coherent channel. All laws
// have finite moments of every order.
class FadingLaw
{
  public:
    using Variant = std::variant<RayleighFading, RicianFading, EmpiricalFading>;

    static FadingLaw rayleigh(double mean_square = 1.0);
    static FadingLaw rician(double k_factor, double mean_square = 1.0);
    static FadingLaw empirical(std::vector<double> magnitudes);

    const Variant &law() const noexcept { return law_; }

    double second_moment() const; // E|h|^2
    double fourth_moment() const; // E|h|^4

    // E|h|^p for p >= 0.
    double abs_moment(double p) const;

    // E g(|h|^2). Rayleigh uses a 64-node Gauss-Laguerre rule on the
    // exponential law of |h|^2, Rician a Gauss-Hermite product rule over the
    // in-phase and quadrature parts of h, Empirical a plain sample average.
    double expectation(const std::function<double(double)> &g_of_power) const;

    // Same rule applied entrywise to a vector-valued g of length n.
    std::vector<double> expectation(const std::function<std::vector<double>(double)> &g_of_power,
                                    std::size_t n) const;

    struct WeightedPower
    {
        double power; // |h|^2
        double weight;
    };

    // The discrete law behind expectation(); weights sum to 1.
    std::vector<WeightedPower> integration_points() const;

    std::string describe() const;

  private:
    explicit FadingLaw(Variant law) : law_(std::move(law)) {}

    Variant law_;
};

} // namespace pskcap
