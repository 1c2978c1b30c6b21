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

#include <cmath>
#include <numbers>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace pskcap;

namespace
{
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("expansion coefficients")
{
    CHECK_THAT(phi1(ModulationOrder(2)), WithinRel(2.0 / kPi, 1e-14));
    CHECK_THAT(phi2(ModulationOrder(3)), WithinAbs(0.1718, 5e-5));
    for (int m : {2, 4, 5, 8, 16})
        CHECK(std::abs(phi2(ModulationOrder(m))) < 1e-12);
}

TEST_CASE("phi1 summation equals the closed-form first derivative")
{
    for (int m = 2; m <= 1024; ++m)
    {
        const ModulationOrder order(m);
        INFO("M = " << m);
        CHECK_THAT(phi1(order), WithinAbs(first_derivative_closed(order), 1e-12));
    }
}

TEST_CASE("psi")
{
    CHECK_THROWS_AS(psi(ModulationOrder(4)), std::domain_error);
    for (int m : {5, 6, 8, 16, 64})
        CHECK_THAT(2.0 * phi3(ModulationOrder(m)), WithinAbs(psi(ModulationOrder(m)), 1e-10));
    for (int m = 5; m <= 1024; ++m)
        CHECK(psi(ModulationOrder(m)) < 0.0);

    const ModulationOrder m8(8);
    const double s = std::sin(kPi / 8.0);
    CHECK_THAT(std::pow(8.0, 4) / (8.0 * kPi * kPi) * std::pow(s, 4) / -psi(m8), WithinAbs(2.44, 0.005));
}

TEST_CASE("AWGN derivatives at zero SNR")
{
    const auto awgn = ChannelModel::awgn();
    const auto e4 = derivatives_at_zero(awgn, ModulationOrder(4));
    CHECK_THAT(e4.cdot0, WithinRel(2.0 / kPi, 1e-14));
    CHECK_THAT(e4.cddot0.value(), WithinRel(4.0 / (3.0 * kPi) * (1.0 / kPi - 1.0), 1e-14));
    CHECK_THAT(e4.cddot0.value(), WithinAbs(-0.289318, 1e-6));

    const auto e3 = derivatives_at_zero(awgn, ModulationOrder(3));
    CHECK(e3.cddot0.is_infinite());
    CHECK(e3.cddot0.to_string() == "inf");
    CHECK_THROWS_AS(e3.cddot0.value(), std::logic_error);

    for (int m = 2; m <= 40; ++m)
    {
        const auto e = derivatives_at_zero(awgn, ModulationOrder(m));
        INFO("M = " << m);
        CHECK(e.cdot0 > 0.0);
        CHECK_THAT(e.cdot0, WithinAbs(e.phi1, 1e-12));
        CHECK(e.cddot0.is_infinite() == (m == 3));
        if (m != 3)
        {
            CHECK(e.cddot0.value() < 0.0);
            CHECK_THAT(e.cddot0.value(), WithinAbs(2.0 * e.phi3, 1e-12));
        }
    }
}

TEST_CASE("fading derivatives scale the AWGN ones")
{
    const auto ray = derivatives_at_zero(ChannelModel::coherent(FadingLaw::rayleigh(1.0)), ModulationOrder(2));
    CHECK_THAT(ray.cdot0, WithinRel(2.0 / kPi, 1e-14));
    CHECK_THAT(ray.cddot0.value(), WithinRel(2.0 * 8.0 / (3.0 * kPi) * (1.0 / kPi - 1.0), 1e-14));

    const auto nc = derivatives_at_zero(ChannelModel::noncoherent(std::sqrt(0.5), 0.5), ModulationOrder(2));
    CHECK_THAT(nc.cdot0, WithinRel(1.0 / kPi, 1e-14));
    CHECK_THAT(nc.cddot0.value(),
               WithinRel(8.0 / (3.0 * kPi) * (1.0 / kPi - 1.0) * 0.25 - 4.0 * 0.25 / kPi, 1e-14));

    // gamma^2 = 0 and Empirical{1} both reduce to AWGN exactly.
    for (int m : {2, 3, 4, 5, 8, 64})
    {
        const ModulationOrder order(m);
        const auto a = derivatives_at_zero(ChannelModel::awgn(), order);
        for (const auto &model :
             {ChannelModel::noncoherent(1.0, 0.0), ChannelModel::coherent(FadingLaw::empirical({1.0}))})
        {
            const auto b = derivatives_at_zero(model, order);
            CHECK(a.cdot0 == b.cdot0);
            CHECK(a.cddot0 == b.cddot0);
        }
    }

    // Noncoherent penalty: the M >= 5 branch, and 2 Cddot = 2 phi3 at M != 3.
    for (int m : {2, 4, 5, 8, 16})
    {
        const ModulationOrder order(m);
        const auto e = derivatives_at_zero(ChannelModel::noncoherent_from_k(2.0), order);
        CHECK_THAT(e.cddot0.value(), WithinAbs(2.0 * e.phi3, 1e-12));
        CHECK(e.cddot0.value() < 0.0);
    }
    CHECK(derivatives_at_zero(ChannelModel::noncoherent_from_k(1.0), ModulationOrder(3)).cddot0.is_infinite());
    CHECK(derivatives_at_zero(ChannelModel::coherent(FadingLaw::rician(2.0)), ModulationOrder(3))
              .cddot0.is_infinite());
}

TEST_CASE("asymptotic limits")
{
    const auto lim = asymptotic_limits(ChannelModel::awgn());
    CHECK_THAT(lim.cdot, WithinAbs(0.7854, 5e-5));
    CHECK_THAT(lim.cddot, WithinAbs(-0.453946, 1e-6));
    CHECK_THAT(derivatives_at_zero(ChannelModel::awgn(), ModulationOrder(4096)).cdot0, WithinAbs(kPi / 4.0, 1e-5));
    CHECK_THAT(derivatives_at_zero(ChannelModel::awgn(), ModulationOrder(4096)).cddot0.value(),
               WithinAbs(lim.cddot, 1e-5));

    const auto nc = asymptotic_limits(ChannelModel::noncoherent(std::sqrt(0.5), 0.5));
    CHECK_THAT(nc.cdot, WithinRel(kPi * 0.5 / 4.0, 1e-15));
    CHECK_THAT(nc.cddot, WithinRel((kPi * kPi - 8.0 * kPi + 8.0) * 0.25 / 16.0 - 0.25 * kPi / 2.0, 1e-14));
    const auto big = derivatives_at_zero(ChannelModel::noncoherent(std::sqrt(0.5), 0.5), ModulationOrder(4096));
    CHECK_THAT(big.cddot0.value(), WithinAbs(nc.cddot, 1e-5));

    const auto co = asymptotic_limits(ChannelModel::coherent(FadingLaw::rayleigh()));
    CHECK_THAT(co.cddot, WithinRel(2.0 * lim.cddot, 1e-15));
}

TEST_CASE("Taylor expansion against quadrature capacity")
{
    const auto awgn = ChannelModel::awgn();
    CHECK(taylor_capacity(ModulationOrder(2), awgn, 0.0) == 0.0);
    CHECK_THAT(taylor_capacity(ModulationOrder(2), awgn, 1e-4),
               WithinAbs(capacity_closed_binary(1e-4), 1e-9));

    SECTION("remainder is o(s^2) for M != 3")
    {
        for (int m : {2, 4, 5, 8})
        {
            const ModulationOrder order(m);
            double prev = INFINITY;
            for (int k = 2; k <= 6; ++k)
            {
                const double s = std::pow(10.0, -k);
                const double rem = std::abs(capacity_quadrature(order, s) - taylor_capacity(order, awgn, s)) / (s * s);
                INFO("M = " << m << ", s = " << s << ", remainder/s^2 = " << rem);
                CHECK(rem < prev);
                prev = rem;
            }
        }
    }

    SECTION("3-PSK carries the s^{3/2} term")
    {
        const ModulationOrder m3(3);
        for (double s : {1e-3, 1e-4, 1e-5})
        {
            const double rest = capacity_quadrature(m3, s) - (phi1(m3) * s + phi3(m3) * s * s);
            CHECK_THAT(rest / std::pow(s, 1.5), WithinAbs(0.1718, 0.01));
        }
    }

    SECTION("fading models")
    {
        const auto nc = ChannelModel::noncoherent_from_k(1.0);
        const auto ray = ChannelModel::coherent(FadingLaw::rayleigh());
        for (int m : {2, 3, 8})
        {
            const ModulationOrder order(m);
            for (const auto &model : {nc, ray})
            {
                const double s = 1e-4;
                INFO(model.describe() << " M = " << m);
                CHECK_THAT(taylor_capacity(order, model, s), WithinAbs(capacity(model, order, s), 5e-11));
            }
        }
    }
}
