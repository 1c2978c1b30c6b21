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

#include "pskcap/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pskcap
{

double q_function(double x)
{
    // glibc erfc is accurate to a couple of ulp over the whole range,
    // including the far tail where 1 - erf would cancel.
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double binary_entropy(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("binary_entropy: probability outside [0, 1]");
    double h = 0.0;
    if (p > 0.0)
        h -= p * std::log(p);
    if (p < 1.0)
        h -= (1.0 - p) * std::log1p(-p);
    return h;
}

} // namespace pskcap
