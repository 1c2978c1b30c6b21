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

#include "pskcap/channel_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pskcap
{

ChannelModel ChannelModel::noncoherent(double d_magnitude, double gamma2)
{
    // With d = 0 the received phase is uniform whatever was sent.
    if (!(d_magnitude > 0.0) || !std::isfinite(d_magnitude))
        throw std::invalid_argument("noncoherent Rician channel: |d| must be positive and finite");
    if (!(gamma2 >= 0.0) || !std::isfinite(gamma2))
        throw std::invalid_argument("noncoherent Rician channel: gamma^2 must be nonnegative and finite");
    return ChannelModel(NoncoherentRicianChannel{d_magnitude, gamma2});
}

ChannelModel ChannelModel::noncoherent_from_k(double k)
{
    if (!(k > 0.0))
        throw std::invalid_argument("noncoherent Rician channel: K must be positive");
    if (std::isinf(k))
        return noncoherent(1.0, 0.0);
    return noncoherent(std::sqrt(k / (k + 1.0)), 1.0 / (k + 1.0));
}

double ChannelModel::received_snr_factor() const
{
    switch (kind())
    {
    case ChannelKind::Awgn:
        return 1.0;
    case ChannelKind::Coherent:
        return std::get<CoherentChannel>(model_).law.second_moment();
    case ChannelKind::NoncoherentRician: {
        const auto &nc = std::get<NoncoherentRicianChannel>(model_);
        return nc.d2() + nc.gamma2;
    }
    }
    return 1.0;
}

std::optional<double> ChannelModel::rician_factor() const
{
    const auto *nc = std::get_if<NoncoherentRicianChannel>(&model_);
    if (!nc)
        return std::nullopt;
    if (nc->gamma2 == 0.0)
        return std::numeric_limits<double>::infinity();
    return nc->d2() / nc->gamma2;
}

std::string ChannelModel::describe() const
{
    std::ostringstream os;
    switch (kind())
    {
    case ChannelKind::Awgn:
        os << "awgn";
        break;
    case ChannelKind::Coherent:
        os << "coherent " << std::get<CoherentChannel>(model_).law.describe();
        break;
    case ChannelKind::NoncoherentRician: {
        const auto &nc = std::get<NoncoherentRicianChannel>(model_);
        os << "noncoherent rician(d2=" << nc.d2() << ", gamma2=" << nc.gamma2 << ")";
        break;
    }
    }
    return os.str();
}

} // namespace pskcap
