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

#include "pskcap/channel.hpp"

#include "pskcap/lowsnr.hpp"
#include "pskcap/quadrature.hpp"
#include "pskcap/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace pskcap
{

namespace
{

constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;
constexpr double kRowSumSlack = 1e-9;

void require_snr(double snr, const char *what)
{
    if (!(snr >= 0.0) || std::isnan(snr))
        throw std::domain_error(std::string(what) + ": SNR must be nonnegative");
}

// Second term of the phase density; the argument of Phi keeps the sign of
// cos(theta) so the density stays nonnegative on the far half circle.
double coherent_term(double theta, double rho)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double phi = 0.5 * std::erfc(-std::sqrt(rho) * c); // Phi(sqrt(2 rho) cos theta)
    return std::sqrt(rho * std::numbers::inv_pi) * c * std::exp(-rho * s * s) * phi;
}

// phase_density - 1/(2 pi)
double density_excess(double theta, double rho)
{
    return std::expm1(-rho) * kInvTwoPi + coherent_term(theta, rho);
}

std::string quadrature_message(int sector, double rho, double err)
{
    std::ostringstream os;
    os << "quadrature did not converge on sector " << sector << " at effective SNR " << rho
       << " (error estimate " << err << ")";
    return os.str();
}

} // namespace

QuadratureError::QuadratureError(int sector, double eff_snr, double error_estimate)
    : std::runtime_error(quadrature_message(sector, eff_snr, error_estimate)), sector_(sector)
{
}

TransitionRow::TransitionRow(ModulationOrder m, std::vector<double> probs, double eff_snr)
    : TransitionRow(m, probs, {}, eff_snr)
{
}

TransitionRow::TransitionRow(ModulationOrder m, std::vector<double> probs, std::vector<double> deviations,
                             double eff_snr)
    : m_(m), probs_(std::move(probs)), deviations_(std::move(deviations)), eff_snr_(eff_snr)
{
    const auto n = static_cast<std::size_t>(m.count());
    if (probs_.size() != n)
        throw std::invalid_argument("transition row length does not match the modulation order");
    for (double p : probs_)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("transition probability outside [0, 1]");
    const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(sum - 1.0) > kRowSumSlack)
        throw std::invalid_argument("transition row does not sum to 1");
    if (deviations_.empty())
    {
        deviations_.resize(n);
        const double uniform = 1.0 / m.count();
        for (std::size_t l = 0; l < n; ++l)
            deviations_[l] = probs_[l] - uniform;
    }
    else if (deviations_.size() != n)
        throw std::invalid_argument("deviation vector length does not match the modulation order");
}

double TransitionRow::transition(int l, int input) const
{
    const int m = m_.count();
    return probs_.at(static_cast<std::size_t>(((l - input) % m + m) % m));
}

double phase_density(double theta, double eff_snr)
{
    require_snr(eff_snr, "phase_density");
    if (eff_snr == 0.0)
        return kInvTwoPi;
    return std::exp(-eff_snr) * kInvTwoPi + coherent_term(theta, eff_snr);
}

TransitionRow transition_row(ModulationOrder m, double eff_snr, double tol)
{
    require_snr(eff_snr, "transition_row");
    if (!(tol > 0.0))
        throw std::invalid_argument("transition_row: tolerance must be positive");

    const int count = m.count();
    const double uniform = 1.0 / count;
    std::vector<double> probs(count, uniform);
    std::vector<double> devs(count, 0.0);
    if (eff_snr == 0.0)
        return TransitionRow(m, std::move(probs), std::move(devs), 0.0);

    // The density is even in theta, so sectors l and M - l carry equal mass.
    for (int l = 0; l <= count / 2; ++l)
    {
        const double a = m.sector_lower(l);
        const double b = m.sector_upper(l);
        const auto excess = integrate_adaptive([&](double t) { return density_excess(t, eff_snr); }, a, b, tol);
        if (!excess.converged)
            throw QuadratureError(l, eff_snr, excess.abs_error);

        double dev = excess.value;
        double p = uniform + dev;
        if (p < 0.25 * uniform)
        {
            // Tail sector: integrate the density itself to keep relative accuracy.
            const auto direct = integrate_adaptive([&](double t) { return phase_density(t, eff_snr); }, a, b, tol);
            if (!direct.converged)
                throw QuadratureError(l, eff_snr, direct.abs_error);
            p = std::max(direct.value, 0.0);
            dev = p - uniform;
        }
        p = std::clamp(p, 0.0, 1.0);
        probs[l] = p;
        devs[l] = dev;
        probs[(count - l) % count] = p;
        devs[(count - l) % count] = dev;
    }
    return TransitionRow(m, std::move(probs), std::move(devs), eff_snr);
}

double capacity_dmc(const TransitionRow &row)
{
    const int count = row.order().count();
    const double log_m = std::log(static_cast<double>(count));
    double c = 0.0;
    for (int l = 0; l < count; ++l)
    {
        const double p = row.probs()[l];
        if (p <= 0.0)
            continue;
        const double x = count * row.deviations()[l];
        // p log(M p) = p log1p(M (p - 1/M))
        c += std::abs(x) < 0.5 ? p * std::log1p(x) : p * std::log(count * p);
    }
    return std::clamp(c, 0.0, log_m);
}

double capacity_closed_binary(double snr)
{
    require_snr(snr, "capacity_closed_binary");
    if (snr == 0.0)
        return 0.0;
    // p = Q(sqrt(2 snr)) and 1/2 - p, both without cancellation.
    const double root = std::sqrt(snr);
    const double p = 0.5 * std::erfc(root);
    const double excess = 0.5 * std::erf(root);
    if (p == 0.0)
        return std::numbers::ln2;
    // log 2 - h(p) = p log(2p) + (1 - p) log(2(1 - p))
    const double low = p < 0.25 ? std::log(2.0 * p) : std::log1p(-2.0 * excess);
    return std::clamp(p * low + (1.0 - p) * std::log1p(2.0 * excess), 0.0, std::numbers::ln2);
}

double capacity_closed_quaternary(double snr)
{
    require_snr(snr, "capacity_closed_quaternary");
    return 2.0 * capacity_closed_binary(0.5 * snr);
}

double capacity_quadrature(ModulationOrder m, double eff_snr, double tol)
{
    return capacity_dmc(transition_row(m, eff_snr, tol));
}

double capacity_awgn(ModulationOrder m, double eff_snr, double tol)
{
    require_snr(eff_snr, "capacity");
    if (eff_snr == 0.0)
        return 0.0;
    if (eff_snr < kTaylorSnrThreshold)
        return taylor_capacity_awgn(m, eff_snr);
    if (m.count() == 2)
        return capacity_closed_binary(eff_snr);
    if (m.count() == 4)
        return capacity_closed_quaternary(eff_snr);
    return capacity_quadrature(m, eff_snr, tol);
}

double noncoherent_effective_snr(const NoncoherentRicianChannel &channel, double snr)
{
    return channel.d2() * snr / (channel.gamma2 * snr + 1.0);
}

double capacity(const ChannelModel &model, ModulationOrder m, double snr, double tol)
{
    require_snr(snr, "capacity");
    switch (model.kind())
    {
    case ChannelKind::Awgn:
        return capacity_awgn(m, snr, tol);
    case ChannelKind::NoncoherentRician:
        return capacity_awgn(m, noncoherent_effective_snr(std::get<NoncoherentRicianChannel>(model.variant()), snr),
                             tol);
    case ChannelKind::Coherent: {
        const FadingLaw &law = std::get<CoherentChannel>(model.variant()).law;
        const double c = law.expectation([&](double power) { return capacity_awgn(m, power * snr, tol); });
        return std::clamp(c, 0.0, std::log(static_cast<double>(m.count())));
    }
    }
    return 0.0;
}

TransitionRow average_transition_row(const ChannelModel &model, ModulationOrder m, double snr, double tol)
{
    require_snr(snr, "average_transition_row");
    switch (model.kind())
    {
    case ChannelKind::Awgn:
        return transition_row(m, snr, tol);
    case ChannelKind::NoncoherentRician:
        return transition_row(m, noncoherent_effective_snr(std::get<NoncoherentRicianChannel>(model.variant()), snr),
                              tol);
    case ChannelKind::Coherent:
        break;
    }
    const FadingLaw &law = std::get<CoherentChannel>(model.variant()).law;
    const auto n = static_cast<std::size_t>(m.count());
    const std::vector<double> both = law.expectation(
        [&](double power) {
            const TransitionRow row = transition_row(m, power * snr, tol);
            std::vector<double> v(row.probs());
            v.insert(v.end(), row.deviations().begin(), row.deviations().end());
            return v;
        },
        2 * n);
    std::vector<double> probs(both.begin(), both.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> devs(both.begin() + static_cast<std::ptrdiff_t>(n), both.end());
    for (double &p : probs)
        p = std::clamp(p, 0.0, 1.0);
    return TransitionRow(m, std::move(probs), std::move(devs), snr * law.second_moment());
}

} // namespace pskcap
