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

#include <array>
#include <cstdint>

namespace pskcap
{

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (counter, key), so any sample can be drawn independently
// of every other one.
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key) noexcept;
};

// Random numbers addressed by (seed, stream, index, block). The simulation
// draws everything for sample i from index i, so results do not depend on
// how samples are spread over threads.
class CounterRng
{
  public:
    CounterRng(std::uint64_t seed, std::uint32_t stream) noexcept;

    // Two uniforms in the open interval (0, 1).
    std::array<double, 2> uniform_pair(std::uint64_t index, std::uint32_t block) const noexcept;

    // Two independent N(0, 1) draws (Box-Muller).
    std::array<double, 2> normal_pair(std::uint64_t index, std::uint32_t block) const noexcept;

  private:
    Philox4x32::Key key_;
    std::uint32_t stream_;
};

// SplitMix64 finalizer; used to derive follow-up seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

} // namespace pskcap
