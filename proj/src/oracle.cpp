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

#include "pskcap/oracle.hpp"

#include "pskcap/channel.hpp"
#include "pskcap/parallel.hpp"
#include "pskcap/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>

namespace pskcap
{

namespace
{

constexpr std::uint64_t kChunk = 1u << 15;
const double kSqrtHalf = std::sqrt(0.5);

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Draws the derotated received sample for transmission index i.
class ReceivedSampler
{
  public:
    ReceivedSampler(const ChannelModel &model, double snr, std::uint64_t seed, std::uint32_t stream)
        : model_(model), amplitude_(std::sqrt(snr)), rng_(seed, stream)
    {
    }

    std::complex<double> operator()(std::uint64_t i) const
    {
        const auto [n1, n2] = rng_.normal_pair(i, 0);
        const std::complex<double> noise(kSqrtHalf * n1, kSqrtHalf * n2);
        switch (model_.kind())
        {
        case ChannelKind::Awgn:
            return amplitude_ + noise;
        case ChannelKind::NoncoherentRician: {
            const auto &nc = std::get<NoncoherentRicianChannel>(model_.variant());
            const auto [g1, g2] = rng_.normal_pair(i, 1);
            const double spread = std::sqrt(0.5 * nc.gamma2);
            const std::complex<double> h(nc.d_magnitude + spread * g1, spread * g2);
            return h * amplitude_ + noise;
        }
        case ChannelKind::Coherent: {
            const std::complex<double> h = fading_draw(std::get<CoherentChannel>(model_.variant()).law, i);
            return (h * amplitude_ + noise) * std::conj(h);
        }
        }
        return noise;
    }

  private:
    std::complex<double> fading_draw(const FadingLaw &law, std::uint64_t i) const
    {
        return std::visit(overloaded{
                              [&](const RayleighFading &r) {
                                  const auto [g1, g2] = rng_.normal_pair(i, 1);
                                  const double s = std::sqrt(0.5 * r.mean_square);
                                  return std::complex<double>(s * g1, s * g2);
                              },
                              [&](const RicianFading &r) {
                                  const auto [g1, g2] = rng_.normal_pair(i, 1);
                                  const double d = std::sqrt(r.k_factor * r.mean_square / (r.k_factor + 1.0));
                                  const double s = std::sqrt(0.5 * r.mean_square / (r.k_factor + 1.0));
                                  return std::complex<double>(d + s * g1, s * g2);
                              },
                              [&](const EmpiricalFading &e) {
                                  const double u = rng_.uniform_pair(i, 1)[0];
                                  const auto n = e.magnitudes.size();
                                  const auto k = std::min<std::size_t>(static_cast<std::size_t>(u * n), n - 1);
                                  return std::complex<double>(e.magnitudes[k], 0.0);
                              },
                          },
                          law.law());
    }

    const ChannelModel &model_;
    double amplitude_;
    CounterRng rng_;
};

void require_samples(std::uint64_t n)
{
    if (n < kMinMcSamples)
        throw std::invalid_argument("Monte Carlo needs at least " + std::to_string(kMinMcSamples) + " samples");
}

// Detected-symbol counts; chunking fixes the summation order independently
// of the thread count.
std::vector<std::uint64_t> simulate_counts(ModulationOrder m, const ChannelModel &model, double snr,
                                           std::uint64_t n, std::uint64_t seed, std::uint32_t stream,
                                           DetectionRule rule)
{
    const int count = m.count();
    const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(count, 0));
    const ReceivedSampler sampler(model, snr, seed, stream);
    parallel_for(chunks, [&](std::size_t c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(n, begin + kChunk);
        auto &local = partial[c];
        for (std::uint64_t i = begin; i < end; ++i)
        {
            const std::complex<double> z = sampler(i);
            const int k =
                rule == DetectionRule::NearestPhase ? detect_nearest_phase(z, count) : detect_max_correlation(z, count);
            ++local[k];
        }
    });
    std::vector<std::uint64_t> total(count, 0);
    for (const auto &p : partial)
        for (int k = 0; k < count; ++k)
            total[k] += p[k];
    return total;
}

struct PluginCapacity
{
    double value;
    double variance;
};

PluginCapacity plugin_capacity(ModulationOrder m, const std::vector<std::uint64_t> &counts, std::uint64_t n)
{
    std::vector<double> probs(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        probs[k] = static_cast<double>(counts[k]) / static_cast<double>(n);
    const double value = capacity_dmc(TransitionRow(m, probs, 0.0));

    // Gradient of sum p log p is log p + 1; the constant drops out of the variance.
    double mean = 0.0;
    double second = 0.0;
    for (double p : probs)
    {
        if (p <= 0.0)
            continue;
        const double g = std::log(p);
        mean += p * g;
        second += p * g * g;
    }
    return {value, std::max(0.0, second - mean * mean) / static_cast<double>(n)};
}

} // namespace

int detect_nearest_phase(std::complex<double> z, int m)
{
    if (z == std::complex<double>(0.0, 0.0))
        return 0;
    const double x = std::arg(z) * m / (2.0 * std::numbers::pi);
    const auto k = static_cast<int>(std::ceil(x - 0.5));
    return ((k % m) + m) % m;
}

int detect_max_correlation(std::complex<double> z, int m)
{
    int best = 0;
    double best_value = z.real();
    for (int k = 1; k < m; ++k)
    {
        const double theta = 2.0 * std::numbers::pi * k / m;
        const double v = z.real() * std::cos(theta) + z.imag() * std::sin(theta);
        if (v > best_value)
        {
            best = k;
            best_value = v;
        }
    }
    return best;
}

std::vector<McEstimate> simulate_transition_row(ModulationOrder m, const ChannelModel &model, double snr,
                                                std::uint64_t n_samples, std::uint64_t seed, DetectionRule rule)
{
    require_samples(n_samples);
    if (!(snr >= 0.0))
        throw std::domain_error("simulate_transition_row: SNR must be nonnegative");
    const auto counts = simulate_counts(m, model, snr, n_samples, seed, 0, rule);
    const double n = static_cast<double>(n_samples);
    std::vector<McEstimate> out;
    out.reserve(counts.size());
    for (std::uint64_t c : counts)
    {
        const double p = static_cast<double>(c) / n;
        out.push_back({p, std::sqrt(p * (1.0 - p) / (n - 1.0)), n_samples, seed});
    }
    return out;
}

std::uint64_t count_detection_disagreements(ModulationOrder m, const ChannelModel &model, double snr,
                                            std::uint64_t n_samples, std::uint64_t seed)
{
    require_samples(n_samples);
    const ReceivedSampler sampler(model, snr, seed, 0);
    const std::uint64_t chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> partial(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(n_samples, begin + kChunk);
        for (std::uint64_t i = begin; i < end; ++i)
        {
            const std::complex<double> z = sampler(i);
            if (detect_nearest_phase(z, m.count()) != detect_max_correlation(z, m.count()))
                ++partial[c];
        }
    });
    std::uint64_t total = 0;
    for (auto p : partial)
        total += p;
    return total;
}

McEstimate mc_capacity(ModulationOrder m, const ChannelModel &model, double snr, std::uint64_t n_samples,
                       std::uint64_t seed)
{
    require_samples(n_samples);
    if (!(snr >= 0.0))
        throw std::domain_error("mc_capacity: SNR must be nonnegative");

    if (model.kind() != ChannelKind::Coherent)
    {
        const auto counts = simulate_counts(m, model, snr, n_samples, seed, 0, DetectionRule::NearestPhase);
        const PluginCapacity c = plugin_capacity(m, counts, n_samples);
        return {c.value, std::sqrt(c.variance), n_samples, seed};
    }

    // The receiver knows h, so the capacity is an average of per-h capacities.
    const auto points = std::get<CoherentChannel>(model.variant()).law.integration_points();
    const std::uint64_t per_stratum = std::max<std::uint64_t>(n_samples / points.size(), kMinMcSamples);
    const ChannelModel awgn = ChannelModel::awgn();
    double value = 0.0;
    double variance = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k)
    {
        const auto counts = simulate_counts(m, awgn, snr * points[k].power, per_stratum, seed,
                                            static_cast<std::uint32_t>(k + 1), DetectionRule::NearestPhase);
        const PluginCapacity c = plugin_capacity(m, counts, per_stratum);
        value += points[k].weight * c.value;
        variance += points[k].weight * points[k].weight * c.variance;
    }
    return {value, std::sqrt(variance), per_stratum * points.size(), seed};
}

double plugin_capacity_bias(ModulationOrder m, std::uint64_t n_samples)
{
    return (m.count() - 1.0) / (2.0 * static_cast<double>(n_samples));
}

IllConditionedFit::IllConditionedFit(double condition)
    : std::runtime_error("low-SNR fit is ill-conditioned (condition number " + std::to_string(condition) + ")"),
      condition_(condition)
{
}

LowSnrFit fit_low_snr_coefficients(std::span<const double> grid, const std::function<double(double)> &capacity_fn)
{
    if (grid.size() < 8)
        throw std::invalid_argument("low-SNR fit needs at least 8 grid points");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (!(grid[i] >= 1e-6 * (1.0 - 1e-9) && grid[i] <= 1e-3 * (1.0 + 1e-9)))
            throw std::invalid_argument("low-SNR fit grid must lie inside [1e-6, 1e-3]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("low-SNR fit grid must be strictly increasing");
    }
    const double ratio = grid[1] / grid[0];
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        if (std::abs(grid[i + 1] / grid[i] / ratio - 1.0) > 1e-6)
            throw std::invalid_argument("low-SNR fit grid must be geometrically spaced");

    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double s = grid[static_cast<std::size_t>(i)];
        design(i, 0) = 1.0;
        design(i, 1) = std::sqrt(s);
        design(i, 2) = s;
        rhs(i) = capacity_fn(s) / s;
    }
    const Eigen::Vector3d scale = design.cwiseAbs().colwise().maxCoeff().transpose();
    const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
    const auto &sv = svd.singularValues();
    const double condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(condition <= kMaxFitCondition))
        throw IllConditionedFit(condition);

    const Eigen::Vector3d coeff = scaled.colPivHouseholderQr().solve(rhs).cwiseQuotient(scale);
    return {coeff(0), coeff(1), coeff(2), condition};
}

LowSnrFit fit_low_snr_coefficients(const ChannelModel &model, ModulationOrder m, std::span<const double> snr_grid)
{
    return fit_low_snr_coefficients(snr_grid, [&](double s) { return capacity(model, m, s); });
}

std::vector<double> geometric_grid(double lo, double hi, int n)
{
    if (!(lo > 0.0 && hi > lo) || n < 2)
        throw std::invalid_argument("geometric_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<McConfig> standard_mc_suite()
{
    const double snr_0db = 1.0;
    const double snr_6db = std::pow(10.0, 0.6);
    std::vector<McConfig> suite;
    for (int m : {2, 3, 8})
    {
        const ModulationOrder order(m);
        const std::string tag = std::to_string(m) + "-PSK";
        suite.push_back({tag + " awgn 0 dB", ChannelModel::awgn(), order, snr_0db});
        suite.push_back({tag + " awgn 6 dB", ChannelModel::awgn(), order, snr_6db});
        suite.push_back({tag + " coherent rayleigh 0 dB", ChannelModel::coherent(FadingLaw::rayleigh()), order,
                         snr_0db});
        suite.push_back({tag + " noncoherent K=1 6 dB", ChannelModel::noncoherent_from_k(1.0), order, snr_6db});
    }
    return suite;
}

SuiteRun run_mc_suite_once(std::span<const McConfig> suite, std::uint64_t n_samples, std::uint64_t seed)
{
    SuiteRun run{seed, {}, 0};
    for (std::size_t c = 0; c < suite.size(); ++c)
    {
        const McConfig &cfg = suite[c];
        const auto est = simulate_transition_row(cfg.m, cfg.model, cfg.snr, n_samples, mix_seed(seed + c));
        const TransitionRow ref = average_transition_row(cfg.model, cfg.m, cfg.snr);
        for (int l = 0; l < cfg.m.count(); ++l)
        {
            const double r = ref[l];
            const double sigma =
                std::max(est[l].std_error, std::sqrt(r * (1.0 - r) / static_cast<double>(n_samples)));
            const bool pass = std::abs(est[l].value - r) <= kMcSigmaBound * sigma;
            run.entries.push_back({c, l, est[l].value, r, sigma, pass});
            if (!pass)
                ++run.failures;
        }
    }
    return run;
}

SuiteResult run_mc_suite(std::span<const McConfig> suite, std::uint64_t n_samples, std::uint64_t seed)
{
    SuiteResult result;
    result.runs.push_back(run_mc_suite_once(suite, n_samples, seed));
    const int first = result.runs.front().failures;
    if (first == 0)
    {
        result.passed = true;
        return result;
    }
    if (first > 1)
    {
        result.passed = false;
        return result;
    }
    result.runs.push_back(run_mc_suite_once(suite, n_samples, mix_seed(seed ^ 0x5DEECE66Dull)));
    result.passed = result.runs.back().failures == 0;
    return result;
}

} // namespace pskcap
