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

#include "pskcap/fading.hpp"

#include <optional>
#include <string>
#include <variant>

namespace pskcap
{

struct AwgnChannel
{
};

// Fading coefficient known at the receiver (scaled nearest-point detection).
struct CoherentChannel
{
    FadingLaw law;
};

// h ~ CN(d, gamma2), unknown at both ends. d is taken real and positive.
struct NoncoherentRicianChannel
{
    double d_magnitude = 1.0;
    double gamma2 = 0.0;

    double d2() const noexcept { return d_magnitude * d_magnitude; }
};

enum class ChannelKind
{
    Awgn,
    Coherent,
    NoncoherentRician
};

// All SNRs are E/N0 of the transmitted signal.
class ChannelModel
{
  public:
    using Variant = std::variant<AwgnChannel, CoherentChannel, NoncoherentRicianChannel>;

    static ChannelModel awgn() { return ChannelModel(AwgnChannel{}); }
    static ChannelModel coherent(FadingLaw law) { return ChannelModel(CoherentChannel{std::move(law)}); }
    static ChannelModel noncoherent(double d_magnitude, double gamma2);
    // Unit total power |d|^2 + gamma^2 = 1 with |d|^2 / gamma^2 = k.
    static ChannelModel noncoherent_from_k(double k);

    const Variant &variant() const noexcept { return model_; }
    ChannelKind kind() const noexcept { return static_cast<ChannelKind>(model_.index()); }

    // Factor turning the transmitted SNR into the received SNR: 1, E|h|^2 or |d|^2 + gamma^2.
    double received_snr_factor() const;

    // K = |d|^2 / gamma^2 of the noncoherent channel (+inf for gamma^2 = 0).
    std::optional<double> rician_factor() const;

    std::string describe() const;

  private:
    explicit ChannelModel(Variant model) : model_(std::move(model)) {}

    Variant model_;
};

} // namespace pskcap
