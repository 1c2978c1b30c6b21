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

#include "pskcap/special.hpp"

#include <cmath>
#include <numbers>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using pskcap::q_function;

// Reference values from a 30-digit quadrature of the Gaussian tail integral.
TEST_CASE("q_function matches arbitrary-precision tail integrals")
{
    struct Ref
    {
        double x, q;
    };
    const Ref refs[] = {
        {1.0, 0.15865525393145705141},
        {std::numbers::sqrt2, 0.078649603525142565329},
        {3.0, 0.0013498980316300945267},
        {5.0, 2.8665157187919391167e-7},
        {10.0, 7.6198530241605260755e-24},
        {-2.0, 0.9772498680518207928},
    };
    for (const auto &r : refs)
    {
        INFO("x = " << r.x);
        CHECK(std::abs(q_function(r.x) / r.q - 1.0) < 1e-14);
    }
}

TEST_CASE("q_function basic properties")
{
    CHECK(q_function(0.0) == 0.5);
    CHECK(q_function(10.0) < 1e-23);
    CHECK_THAT(q_function(std::numbers::sqrt2), WithinAbs(0.0786496, 1e-7));

    double prev = q_function(-10.0);
    for (double x = -9.9; x <= 10.0; x += 0.1)
    {
        const double q = q_function(x);
        CHECK(q <= prev);
        CHECK_THAT(q + q_function(-x), WithinRel(1.0, 1e-15));
        prev = q;
    }
}

TEST_CASE("binary_entropy")
{
    CHECK(pskcap::binary_entropy(0.0) == 0.0);
    CHECK(pskcap::binary_entropy(1.0) == 0.0);
    CHECK_THAT(pskcap::binary_entropy(0.5), WithinRel(std::numbers::ln2, 1e-15));
    CHECK_THAT(pskcap::binary_entropy(0.1), WithinRel(-0.1 * std::log(0.1) - 0.9 * std::log(0.9), 1e-14));
    CHECK_THROWS_AS(pskcap::binary_entropy(1.5), std::domain_error);
}
