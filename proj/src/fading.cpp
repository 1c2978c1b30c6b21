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

#include "pskcap/fading.hpp"

#include "pskcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pskcap
{

namespace
{

constexpr int kLaguerreNodes = 64;
constexpr int kHermiteNodes = 64;

const GaussRule &laguerre_rule()
{
    static const GaussRule rule = gauss_laguerre(kLaguerreNodes);
    return rule;
}

const GaussRule &hermite_rule()
{
    static const GaussRule rule = gauss_hermite(kHermiteNodes);
    return rule;
}

// Line-of-sight power |d|^2 and scattered power gamma^2 of a Rician law.
std::pair<double, double> rician_split(const RicianFading &r)
{
    return {r.k_factor * r.mean_square / (r.k_factor + 1.0), r.mean_square / (r.k_factor + 1.0)};
}

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

FadingLaw FadingLaw::rayleigh(double mean_square)
{
    if (!(mean_square > 0.0) || !std::isfinite(mean_square))
        throw std::invalid_argument("Rayleigh fading: mean square must be positive and finite");
    return FadingLaw(RayleighFading{mean_square});
}

FadingLaw FadingLaw::rician(double k_factor, double mean_square)
{
    if (!(mean_square > 0.0) || !std::isfinite(mean_square))
        throw std::invalid_argument("Rician fading: mean square must be positive and finite");
    if (!(k_factor >= 0.0) || !std::isfinite(k_factor))
        throw std::invalid_argument("Rician fading: K factor must be nonnegative and finite");
    return FadingLaw(RicianFading{k_factor, mean_square});
}

FadingLaw FadingLaw::empirical(std::vector<double> magnitudes)
{
    if (magnitudes.empty())
        throw std::invalid_argument("empirical fading: magnitude list is empty");
    for (double v : magnitudes)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("empirical fading: magnitudes must be nonnegative and finite");
    if (std::none_of(magnitudes.begin(), magnitudes.end(), [](double v) { return v > 0.0; }))
        throw std::invalid_argument("empirical fading: need at least one positive magnitude");
    return FadingLaw(EmpiricalFading{std::move(magnitudes)});
}

double FadingLaw::second_moment() const
{
    return std::visit(overloaded{
                          [](const RayleighFading &r) { return r.mean_square; },
                          [](const RicianFading &r) { return r.mean_square; },
                          [](const EmpiricalFading &e) {
                              double s = 0.0;
                              for (double v : e.magnitudes)
                                  s += v * v;
                              return s / static_cast<double>(e.magnitudes.size());
                          },
                      },
                      law_);
}

double FadingLaw::fourth_moment() const
{
    return std::visit(overloaded{
                          [](const RayleighFading &r) { return 2.0 * r.mean_square * r.mean_square; },
                          [](const RicianFading &r) {
                              const auto [d2, g2] = rician_split(r);
                              return d2 * d2 + 4.0 * d2 * g2 + 2.0 * g2 * g2;
                          },
                          [](const EmpiricalFading &e) {
                              double s = 0.0;
                              for (double v : e.magnitudes)
                                  s += v * v * v * v;
                              return s / static_cast<double>(e.magnitudes.size());
                          },
                      },
                      law_);
}

double FadingLaw::abs_moment(double p) const
{
    if (!(p >= 0.0))
        throw std::invalid_argument("abs_moment: order must be nonnegative");
    if (const auto *r = std::get_if<RayleighFading>(&law_))
        return std::pow(r->mean_square, 0.5 * p) * std::tgamma(1.0 + 0.5 * p);
    return expectation([p](double power) { return std::pow(power, 0.5 * p); });
}

std::vector<FadingLaw::WeightedPower> FadingLaw::integration_points() const
{
    std::vector<WeightedPower> points;
    std::visit(overloaded{
                   [&](const RayleighFading &r) {
                       // |h|^2 ~ Exp(mean_square)
                       const GaussRule &rule = laguerre_rule();
                       for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                           points.push_back({r.mean_square * rule.nodes[i], rule.weights[i]});
                   },
                   [&](const RicianFading &r) {
                       // h = |d| + gamma * (x + j y) with x, y weighted by exp(-x^2) / sqrt(pi).
                       // The integrand is even in y, so only y >= 0 nodes are kept, doubled.
                       const auto [d2, g2] = rician_split(r);
                       const double d = std::sqrt(d2);
                       const double gamma = std::sqrt(g2);
                       const GaussRule &rule = hermite_rule();
                       const std::size_t n = rule.nodes.size();
                       for (std::size_t i = 0; i < n; ++i)
                       {
                           const double re = d + gamma * rule.nodes[i];
                           for (std::size_t j = 0; j < n; ++j)
                           {
                               if (rule.nodes[j] < 0.0)
                                   continue;
                               const double im = gamma * rule.nodes[j];
                               points.push_back({re * re + im * im,
                                                 2.0 * rule.weights[i] * rule.weights[j] / std::numbers::pi});
                           }
                       }
                   },
                   [&](const EmpiricalFading &e) {
                       const double w = 1.0 / static_cast<double>(e.magnitudes.size());
                       for (double v : e.magnitudes)
                           points.push_back({v * v, w});
                   },
               },
               law_);
    return points;
}

double FadingLaw::expectation(const std::function<double(double)> &g) const
{
    double s = 0.0;
    for (const auto &p : integration_points())
        s += p.weight * g(p.power);
    return s;
}

std::vector<double> FadingLaw::expectation(const std::function<std::vector<double>(double)> &g,
                                           std::size_t n) const
{
    std::vector<double> acc(n, 0.0);
    for (const auto &p : integration_points())
    {
        const std::vector<double> v = g(p.power);
        if (v.size() != n)
            throw std::invalid_argument("FadingLaw::expectation: integrand returned wrong length");
        for (std::size_t i = 0; i < n; ++i)
            acc[i] += p.weight * v[i];
    }
    return acc;
}

std::string FadingLaw::describe() const
{
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const RayleighFading &r) { os << "rayleigh(mean_square=" << r.mean_square << ")"; },
                   [&](const RicianFading &r) {
                       os << "rician(k=" << r.k_factor << ", mean_square=" << r.mean_square << ")";
                   },
                   [&](const EmpiricalFading &e) { os << "empirical(" << e.magnitudes.size() << " samples)"; },
               },
               law_);
    return os.str();
}

} // namespace pskcap
