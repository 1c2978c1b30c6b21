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

#include "pskcap/channel.hpp"
#include "pskcap/lowsnr.hpp"
#include "pskcap/oracle.hpp"
#include "pskcap/special.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace pskcap;

namespace
{
constexpr double kPi = std::numbers::pi;

bool within_sigma(const McEstimate &e, double ref)
{
    const double sigma = std::max(e.std_error, std::sqrt(ref * (1.0 - ref) / static_cast<double>(e.n_samples)));
    return std::abs(e.value - ref) <= kMcSigmaBound * sigma;
}
} // namespace

TEST_CASE("detection rules")
{
    CHECK(detect_nearest_phase({1.0, 0.0}, 4) == 0);
    CHECK(detect_nearest_phase({0.0, 1.0}, 4) == 1);
    CHECK(detect_nearest_phase({-1.0, 0.0}, 4) == 2);
    CHECK(detect_nearest_phase({0.0, -1.0}, 4) == 3);
    CHECK(detect_nearest_phase({1.0, -0.1}, 8) == 0);
    CHECK(detect_max_correlation({1.0, -0.1}, 8) == 0);
    // boundary between 0 and 1 at 45 degrees for M = 4: lower index wins
    CHECK(detect_max_correlation({1.0, 1.0}, 4) == 0);
    for (int m : {2, 3, 5, 8, 16})
        for (int k = 0; k < 360; ++k)
        {
            const double a = (k + 0.37) * kPi / 180.0;
            const std::complex<double> z = std::polar(1.3, a);
            CHECK(detect_nearest_phase(z, m) == detect_max_correlation(z, m));
        }
}

TEST_CASE("simulated transition rows")
{
    SECTION("uniform at zero SNR")
    {
        const auto row = simulate_transition_row(ModulationOrder(4), ChannelModel::awgn(), 0.0, 1000000, 11);
        REQUIRE(row.size() == 4);
        for (const auto &e : row)
            CHECK(within_sigma(e, 0.25));
    }
    SECTION("binary error probability")
    {
        const auto row = simulate_transition_row(ModulationOrder(2), ChannelModel::awgn(), 1.0, 1000000, 12);
        CHECK(within_sigma(row[1], q_function(std::sqrt(2.0))));
        CHECK(within_sigma(row[0], 1.0 - q_function(std::sqrt(2.0))));
    }
    SECTION("noncoherent 8-PSK against quadrature")
    {
        const auto model = ChannelModel::noncoherent(std::sqrt(0.5), 0.5);
        const auto row = simulate_transition_row(ModulationOrder(8), model, 2.0, 1000000, 13);
        const auto ref = transition_row(ModulationOrder(8), 0.5 * 2.0 / (0.5 * 2.0 + 1.0));
        for (int l = 0; l < 8; ++l)
        {
            INFO("l = " << l);
            CHECK(within_sigma(row[l], ref[l]));
        }
    }
    SECTION("coherent Rayleigh against averaged rows")
    {
        const auto model = ChannelModel::coherent(FadingLaw::rayleigh());
        const auto row = simulate_transition_row(ModulationOrder(3), model, 1.0, 1000000, 14);
        const auto ref = average_transition_row(model, ModulationOrder(3), 1.0);
        for (int l = 0; l < 3; ++l)
            CHECK(within_sigma(row[l], ref[l]));
    }
    SECTION("validation")
    {
        CHECK_THROWS_AS(simulate_transition_row(ModulationOrder(2), ChannelModel::awgn(), 1.0, 999, 1),
                        std::invalid_argument);
        CHECK_THROWS(simulate_transition_row(ModulationOrder(2), ChannelModel::awgn(), -1.0, 10000, 1));
    }
}

TEST_CASE("Monte Carlo results do not depend on thread count")
{
    const auto model = ChannelModel::noncoherent_from_k(1.0);
    const auto a = simulate_transition_row(ModulationOrder(8), model, 1.0, 200000, 99);
    const auto ca = mc_capacity(ModulationOrder(8), model, 1.0, 200000, 99);
    ::setenv("PSKCAP_THREADS", "1", 1);
    const auto b = simulate_transition_row(ModulationOrder(8), model, 1.0, 200000, 99);
    const auto cb = mc_capacity(ModulationOrder(8), model, 1.0, 200000, 99);
    ::unsetenv("PSKCAP_THREADS");
    for (std::size_t l = 0; l < a.size(); ++l)
    {
        CHECK(a[l].value == b[l].value);
        CHECK(a[l].std_error == b[l].std_error);
    }
    CHECK(ca.value == cb.value);
    CHECK(ca.std_error == cb.std_error);
    CHECK(ca.seed == 99);

    const auto other = simulate_transition_row(ModulationOrder(8), model, 1.0, 200000, 100);
    CHECK(other[0].value != a[0].value);
}

TEST_CASE("both detection rules agree on every sample")
{
    for (int m : {2, 3, 8})
    {
        CHECK(count_detection_disagreements(ModulationOrder(m), ChannelModel::awgn(), 1.0, 100000, 5) == 0);
        CHECK(count_detection_disagreements(ModulationOrder(m), ChannelModel::noncoherent_from_k(1.0), 2.0, 100000, 6) ==
              0);
        CHECK(count_detection_disagreements(ModulationOrder(m), ChannelModel::coherent(FadingLaw::rician(2.0)), 2.0,
                                            100000, 7) == 0);
    }
}

TEST_CASE("Monte Carlo capacity")
{
    const std::uint64_t n = 1000000;
    const auto zero = mc_capacity(ModulationOrder(4), ChannelModel::awgn(), 0.0, n, 3);
    CHECK(zero.value >= 0.0);
    CHECK(zero.value <= 4.0 * kMcSigmaBound * plugin_capacity_bias(ModulationOrder(4), n));
    CHECK_THAT(plugin_capacity_bias(ModulationOrder(4), n), WithinRel(1.5e-6, 1e-12));

    const auto c4 = mc_capacity(ModulationOrder(4), ChannelModel::awgn(), 2.0, n, 4);
    const double ref = 2.0 * capacity_closed_binary(1.0);
    CHECK(std::abs(c4.value - plugin_capacity_bias(ModulationOrder(4), n) - ref) <= kMcSigmaBound * c4.std_error);
    CHECK(c4.std_error > 0.0);
    CHECK(c4.n_samples == n);

    const auto again = mc_capacity(ModulationOrder(4), ChannelModel::awgn(), 2.0, n, 4);
    CHECK(again.value == c4.value);
    CHECK(again.std_error == c4.std_error);

    const auto ray = ChannelModel::coherent(FadingLaw::rayleigh());
    const auto cr = mc_capacity(ModulationOrder(2), ray, 1.0, n, 5);
    CHECK(std::abs(cr.value - 0.33267857714195841066) <= kMcSigmaBound * cr.std_error + 2.0 * plugin_capacity_bias(ModulationOrder(2), 1000));
}

TEST_CASE("low-SNR coefficient fits")
{
    const auto grid = geometric_grid(1e-6, 1e-3, 16);
    REQUIRE(grid.size() == 16);
    CHECK_THAT(grid.front(), WithinRel(1e-6, 1e-14));
    CHECK_THAT(grid.back(), WithinRel(1e-3, 1e-14));

    const auto awgn = ChannelModel::awgn();
    const auto f2 = fit_low_snr_coefficients(awgn, ModulationOrder(2), grid);
    CHECK_THAT(f2.phi1, WithinRel(2.0 / kPi, 1e-3));
    CHECK_THAT(f2.phi2, WithinAbs(0.0, 1e-3));
    CHECK_THAT(f2.phi3, WithinRel(4.0 / (3.0 * kPi) * (1.0 / kPi - 1.0), 1e-2));
    CHECK(f2.condition < kMaxFitCondition);

    const auto f3 = fit_low_snr_coefficients(awgn, ModulationOrder(3), grid);
    CHECK_THAT(f3.phi2, WithinRel(0.1718, 0.02));
    CHECK_THAT(f3.phi1, WithinRel(phi1(ModulationOrder(3)), 1e-3));

    for (int m : {4, 8, 16})
    {
        const ModulationOrder order(m);
        const auto f = fit_low_snr_coefficients(awgn, order, grid);
        INFO("M = " << m);
        CHECK_THAT(f.phi1, WithinRel(phi1(order), 1e-3));
        CHECK_THAT(f.phi3, WithinRel(phi3(order), 1e-2));
        CHECK(std::abs(f.phi2) < 1e-3);
    }

    for (int m : {2, 3, 8})
    {
        const ModulationOrder order(m);
        const auto exact = fit_low_snr_coefficients(grid, [&](double s) { return taylor_capacity_awgn(order, s); });
        CHECK_THAT(exact.phi1, WithinAbs(phi1(order), 1e-10));
        CHECK_THAT(exact.phi2, WithinAbs(phi2(order), 1e-10));
        CHECK_THAT(exact.phi3, WithinAbs(phi3(order), 1e-10));
    }

    SECTION("grid validation")
    {
        auto cap = [](double s) { return s; };
        const auto few = geometric_grid(1e-6, 1e-3, 7);
        CHECK_THROWS_AS(fit_low_snr_coefficients(few, cap), std::invalid_argument);
        const auto wide = geometric_grid(1e-7, 1e-3, 10);
        CHECK_THROWS_AS(fit_low_snr_coefficients(wide, cap), std::invalid_argument);
        std::vector<double> uneven = geometric_grid(1e-6, 1e-3, 10);
        uneven[4] *= 1.5;
        CHECK_THROWS_AS(fit_low_snr_coefficients(uneven, cap), std::invalid_argument);
        // a grid spanning too little range makes the columns nearly collinear
        const auto narrow = geometric_grid(1e-4, 1.0000001e-4, 10);
        CHECK_THROWS_AS(fit_low_snr_coefficients(narrow, cap), IllConditionedFit);
    }
}

TEST_CASE("standard verification suite")
{
    const auto suite = standard_mc_suite();
    REQUIRE(suite.size() == 12);
    const auto result = run_mc_suite(suite, 100000, 42);
    CHECK(result.passed);
    REQUIRE_FALSE(result.runs.empty());
    std::size_t entries = 0;
    for (const auto &c : suite)
        entries += c.m.count();
    CHECK(result.runs.front().entries.size() == entries);

    const auto again = run_mc_suite(suite, 100000, 42);
    REQUIRE(again.runs.size() == result.runs.size());
    for (std::size_t i = 0; i < result.runs.front().entries.size(); ++i)
        CHECK(again.runs.front().entries[i].estimate == result.runs.front().entries[i].estimate);
}
