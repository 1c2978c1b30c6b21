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

#include "pskcap/channel_model.hpp"
#include "pskcap/fading.hpp"

#include <cmath>
#include <numbers>

using Catch::Matchers::WithinRel;
using pskcap::ChannelModel;
using pskcap::FadingLaw;

TEST_CASE("fading law moments")
{
    const auto ray = FadingLaw::rayleigh(2.0);
    CHECK(ray.second_moment() == 2.0);
    CHECK(ray.fourth_moment() == 8.0);
    CHECK_THAT(ray.abs_moment(3.0), WithinRel(std::pow(2.0, 1.5) * 0.75 * std::sqrt(std::numbers::pi), 1e-14));

    // K = 1, unit power: |d|^2 = gamma^2 = 1/2, E|h|^4 = 1/4 + 1 + 1/2.
    const auto ric = FadingLaw::rician(1.0);
    CHECK(ric.second_moment() == 1.0);
    CHECK_THAT(ric.fourth_moment(), WithinRel(1.75, 1e-15));

    const auto emp = FadingLaw::empirical({0.5, 1.5});
    CHECK_THAT(emp.second_moment(), WithinRel(1.25, 1e-15));
    CHECK_THAT(emp.fourth_moment(), WithinRel((0.0625 + 5.0625) / 2.0, 1e-15));

    for (const auto &law : {ray, ric, emp})
        CHECK(law.fourth_moment() >= law.second_moment() * law.second_moment());
}

TEST_CASE("fading expectations reproduce moments by quadrature")
{
    for (const auto &law : {FadingLaw::rayleigh(1.3), FadingLaw::rician(0.0, 1.0), FadingLaw::rician(3.0, 0.7),
                            FadingLaw::rician(40.0, 1.0)})
    {
        INFO(law.describe());
        CHECK_THAT(law.expectation([](double) { return 1.0; }), WithinRel(1.0, 1e-12));
        CHECK_THAT(law.expectation([](double p) { return p; }), WithinRel(law.second_moment(), 1e-12));
        CHECK_THAT(law.expectation([](double p) { return p * p; }), WithinRel(law.fourth_moment(), 1e-11));
    }
}

TEST_CASE("fading law validation")
{
    CHECK_THROWS_AS(FadingLaw::rayleigh(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FadingLaw::rician(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(FadingLaw::empirical({}), std::invalid_argument);
    CHECK_THROWS_AS(FadingLaw::empirical({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(FadingLaw::empirical({1.0, -0.1}), std::invalid_argument);
}

TEST_CASE("channel model invariants")
{
    CHECK_THROWS_AS(ChannelModel::noncoherent(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelModel::noncoherent(1.0, -1.0), std::invalid_argument);

    const auto k1 = ChannelModel::noncoherent_from_k(1.0);
    REQUIRE(k1.rician_factor().has_value());
    CHECK_THAT(*k1.rician_factor(), WithinRel(1.0, 1e-15));
    CHECK_THAT(k1.received_snr_factor(), WithinRel(1.0, 1e-15));
    CHECK(std::isinf(*ChannelModel::noncoherent(1.0, 0.0).rician_factor()));
    CHECK_FALSE(ChannelModel::awgn().rician_factor().has_value());
    CHECK(ChannelModel::coherent(FadingLaw::rayleigh(2.0)).received_snr_factor() == 2.0);
}
