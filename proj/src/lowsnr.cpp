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

#include "pskcap/lowsnr.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pskcap
{

namespace
{

constexpr double kPi = std::numbers::pi;

// sum_{i=1}^{M} cos^p(2 pi i k / M)
double cos_power_sum(int m, int k, int p)
{
    double s = 0.0;
    for (int i = 1; i <= m; ++i)
        s += std::pow(std::cos(2.0 * kPi * i * k / m), p);
    return s;
}

// M^2 sin^2(pi/M): shared by the first derivative and the noncoherent penalty.
double m2_sin2(int m)
{
    const double s = std::sin(kPi / m);
    return static_cast<double>(m) * m * s * s;
}

} // namespace

double ExtendedReal::value() const
{
    if (infinite_)
        throw std::logic_error("ExtendedReal: value requested from +infinity");
    return value_;
}

double ExtendedReal::as_double() const noexcept
{
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

ExtendedReal ExtendedReal::scaled(double factor) const
{
    if (infinite_)
    {
        if (!(factor > 0.0))
            throw std::domain_error("ExtendedReal: +infinity scaled by a nonpositive factor");
        return *this;
    }
    return finite(value_ * factor);
}

ExtendedReal ExtendedReal::plus(double offset) const
{
    return infinite_ ? *this : finite(value_ + offset);
}

std::string ExtendedReal::to_string() const
{
    if (infinite_)
        return "inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value_, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double phi1(ModulationOrder m)
{
    const int n = m.count();
    const double s = std::sin(kPi / n);
    return n / (2.0 * kPi) * s * s * cos_power_sum(n, 1, 2);
}

double phi2(ModulationOrder m)
{
    const int n = m.count();
    const double s1 = std::sin(kPi / n);
    const double s2 = std::sin(2.0 * kPi / n);
    const double v = n / (kPi * std::sqrt(kPi)) * (s1 * s2 - n / 6.0 * s1 * s1 * s1) * cos_power_sum(n, 1, 3);
    return v + 0.0; // no negative zero
}

double phi3(ModulationOrder m)
{
    const double n = m.count();
    const int mi = m.count();
    const double s1 = std::sin(kPi / n);
    const double s2 = std::sin(2.0 * kPi / n);
    const double s1sq = s1 * s1;
    const double s2sq = s2 * s2;
    const double pi2 = kPi * kPi;

    const double a = -n * n / (16.0 * kPi) * s2sq;
    const double b = n * (kPi + 2.0) / (16.0 * pi2) * s2sq * cos_power_sum(mi, 2, 2);
    const double c = ((n * n * n / (12.0 * pi2) - n / (3.0 * kPi)) * s1sq * s1sq - n * n / (2.0 * pi2) * s1sq * s2) *
                     cos_power_sum(mi, 1, 4);
    const double d = n * n / (4.0 * pi2) * s1sq * s2 * cos_power_sum(mi, 1, 2);
    return a + b + c + d;
}

double psi(ModulationOrder m)
{
    if (m.count() < 5)
        throw std::domain_error("psi is defined for M >= 5 only");
    const double n = m.count();
    const double s1 = std::sin(kPi / n);
    const double s2 = std::sin(2.0 * kPi / n);
    return n * n / (16.0 * kPi * kPi) *
           ((2.0 - kPi) * s2 * s2 + (n * n - 4.0 * kPi) * s1 * s1 * s1 * s1 - 2.0 * n * s1 * s1 * s2);
}

double first_derivative_closed(ModulationOrder m)
{
    if (m.count() == 2)
        return 2.0 / kPi;
    return m2_sin2(m.count()) / (4.0 * kPi);
}

ExtendedReal second_derivative_closed(ModulationOrder m)
{
    switch (m.count())
    {
    case 2:
        return ExtendedReal::finite(8.0 / (3.0 * kPi) * (1.0 / kPi - 1.0));
    case 3:
        return ExtendedReal::positive_infinity();
    case 4:
        return ExtendedReal::finite(4.0 / (3.0 * kPi) * (1.0 / kPi - 1.0));
    default:
        return ExtendedReal::finite(psi(m));
    }
}

LowSnrExpansion derivatives_at_zero(const ChannelModel &model, ModulationOrder m)
{
    const double p1 = phi1(m);
    const double p2 = phi2(m);
    const double p3 = phi3(m);
    const double cdot = first_derivative_closed(m);
    const ExtendedReal cddot = second_derivative_closed(m);

    switch (model.kind())
    {
    case ChannelKind::Awgn:
        return {m, model, p1, p2, p3, cdot, cddot};

    case ChannelKind::Coherent: {
        // Every law in FadingLaw has finite moments; the checks guard the arithmetic.
        const FadingLaw &law = std::get<CoherentChannel>(model.variant()).law;
        const double e2 = law.second_moment();
        const double e3 = law.abs_moment(3.0);
        const double e4 = law.fourth_moment();
        if (!std::isfinite(e4) || !std::isfinite(e3))
            throw std::domain_error("coherent fading law lacks a finite fourth moment");
        return {m, model, p1 * e2, p2 * e3, p3 * e4, cdot * e2, cddot.scaled(e4)};
    }

    case ChannelKind::NoncoherentRician: {
        const auto &nc = std::get<NoncoherentRicianChannel>(model.variant());
        const double d2 = nc.d2();
        const double g2 = nc.gamma2;
        // rho(s) = d2 s - d2 g2 s^2 + O(s^3) substituted into the AWGN expansion.
        const double q1 = p1 * d2;
        const double q2 = p2 * d2 * std::sqrt(d2);
        const double q3 = p3 * d2 * d2 - p1 * d2 * g2;

        ExtendedReal second = ExtendedReal::positive_infinity();
        switch (m.count())
        {
        case 2:
        case 4:
            second = ExtendedReal::finite(cddot.value() * d2 * d2 - 4.0 * d2 * g2 / kPi);
            break;
        case 3:
            break;
        default:
            second = ExtendedReal::finite(psi(m) * d2 * d2 - d2 * g2 / (2.0 * kPi) * m2_sin2(m.count()));
            break;
        }
        return {m, model, q1, q2, q3, cdot * d2, second};
    }
    }
    throw std::logic_error("derivatives_at_zero: unknown channel kind");
}

AsymptoticLimits asymptotic_limits(const ChannelModel &model)
{
    const double cdot = kPi / 4.0;
    const double cddot = (kPi * kPi - 8.0 * kPi + 8.0) / 16.0;
    switch (model.kind())
    {
    case ChannelKind::Awgn:
        return {cdot, cddot};
    case ChannelKind::Coherent: {
        const FadingLaw &law = std::get<CoherentChannel>(model.variant()).law;
        return {cdot * law.second_moment(), cddot * law.fourth_moment()};
    }
    case ChannelKind::NoncoherentRician: {
        const auto &nc = std::get<NoncoherentRicianChannel>(model.variant());
        const double d2 = nc.d2();
        return {cdot * d2, cddot * d2 * d2 - d2 * nc.gamma2 * kPi / 2.0};
    }
    }
    throw std::logic_error("asymptotic_limits: unknown channel kind");
}

double taylor_capacity(ModulationOrder m, const ChannelModel &model, double snr)
{
    if (!(snr >= 0.0))
        throw std::domain_error("taylor_capacity: SNR must be nonnegative");
    const LowSnrExpansion e = derivatives_at_zero(model, m);
    return e.phi1 * snr + e.phi2 * snr * std::sqrt(snr) + e.phi3 * snr * snr;
}

double taylor_capacity_awgn(ModulationOrder m, double eff_snr)
{
    if (!(eff_snr >= 0.0))
        throw std::domain_error("taylor_capacity: SNR must be nonnegative");
    return phi1(m) * eff_snr + phi2(m) * eff_snr * std::sqrt(eff_snr) + phi3(m) * eff_snr * eff_snr;
}

} // namespace pskcap
