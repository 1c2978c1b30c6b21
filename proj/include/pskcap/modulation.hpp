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

#include <complex>
#include <numbers>

namespace pskcap
{

// Size M of an M-ary PSK constellation. Points sit on the unit circle at
// phases 2*pi*k/M, k = 0..M-1; symbol 0 (phase 0) is the reference input.
class ModulationOrder
{
  public:
    explicit ModulationOrder(int m);

    int count() const noexcept { return m_; }
    double phase(int k) const noexcept { return 2.0 * std::numbers::pi * k / m_; }
    std::complex<double> point(int k) const { return std::polar(1.0, phase(k)); }

    // Decision sector of symbol l: [(2l-1)pi/M, (2l+1)pi/M).
    double sector_lower(int l) const noexcept { return (2.0 * l - 1.0) * std::numbers::pi / m_; }
    double sector_upper(int l) const noexcept { return (2.0 * l + 1.0) * std::numbers::pi / m_; }

    bool operator==(const ModulationOrder &) const = default;

  private:
    int m_;
};

} // namespace pskcap
