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

#include "pskcap/quadrature.hpp"

#include <cmath>
#include <numbers>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("adaptive Gauss-Kronrod integrates smooth functions to tolerance")
{
    const auto r = pskcap::integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(std::numbers::e - 1.0, 1e-14));

    // Sharp peak forces subdivision.
    const auto peak =
        pskcap::integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10);
    CHECK(peak.converged);
    CHECK(peak.evaluations > 21);
    CHECK_THAT(peak.value, WithinRel(2.0 * std::atan(1.0 / 1e-2) / 1e-2, 1e-11));
}

TEST_CASE("adaptive quadrature reports non-convergence")
{
    const auto r = pskcap::integrate_adaptive([](double x) { return x > 0.5 ? 1.0 : 0.0; }, 0.0, 1.0, 1e-15, 8);
    CHECK_FALSE(r.converged);
}

TEST_CASE("Gauss-Laguerre reproduces factorial moments")
{
    const auto rule = pskcap::gauss_laguerre(64);
    REQUIRE(rule.nodes.size() == 64);
    for (int k = 0; k <= 12; ++k)
    {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i], k);
        INFO("k = " << k);
        CHECK_THAT(s, WithinRel(std::tgamma(k + 1.0), 1e-11));
    }
}

TEST_CASE("Gauss-Hermite reproduces Gaussian moments")
{
    const auto rule = pskcap::gauss_hermite(64);
    // int x^{2k} exp(-x^2) = Gamma(k + 1/2)
    for (int k = 0; k <= 8; ++k)
    {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
        INFO("k = " << k);
        CHECK_THAT(s, WithinRel(std::tgamma(k + 0.5), 1e-12));
    }
}
