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

#include "pskcap/channel_model.hpp"
#include "pskcap/modulation.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pskcap
{

// Monte Carlo estimate; std_error is the sample standard deviation over sqrt(n).
struct McEstimate
{
    double value;
    double std_error;
    std::uint64_t n_samples;
    std::uint64_t seed;
};

inline constexpr std::uint64_t kMinMcSamples = 1000;

enum class DetectionRule
{
    NearestPhase,  // sector test on arg(z)
    MaxCorrelation // argmax_k Re(z conj(s_k))
};

// Symbol index detected from a (derotated) received sample. Ties resolve to
// the lower index; they have probability zero.
int detect_nearest_phase(std::complex<double> z, int m);
int detect_max_correlation(std::complex<double> z, int m);

// Sends symbol 0 with E/N0 = snr over the physical channel r = h s + n and
// returns the frequency of each detected symbol. Coherent detection derotates
// by the known h; AWGN and noncoherent detection act on r directly.
std::vector<McEstimate> simulate_transition_row(ModulationOrder m, const ChannelModel &model, double snr,
                                                std::uint64_t n_samples, std::uint64_t seed,
                                                DetectionRule rule = DetectionRule::NearestPhase);

// Number of samples on which the two detection rules disagree.
std::uint64_t count_detection_disagreements(ModulationOrder m, const ChannelModel &model, double snr,
                                            std::uint64_t n_samples, std::uint64_t seed);

// Plug-in capacity of the simulated row, with a first-order (delta method)
// standard error. For coherent fading the samples are stratified over the
// fading law's integration points, each stratum with h held at its node.
McEstimate mc_capacity(ModulationOrder m, const ChannelModel &model, double snr, std::uint64_t n_samples,
                       std::uint64_t seed);

// Leading bias (M - 1) / (2n) of the plug-in capacity at a uniform row.
double plugin_capacity_bias(ModulationOrder m, std::uint64_t n_samples);

class IllConditionedFit : public std::runtime_error
{
  public:
    IllConditionedFit(double condition);
    double condition() const noexcept { return condition_; }

  private:
    double condition_;
};

struct LowSnrFit
{
    double phi1;
    double phi2;
    double phi3;
    double condition; // 2-norm condition number of the column-scaled design
};

inline constexpr double kMaxFitCondition = 1e10;

// Weighted least squares of C(s)/s against 1, s^{1/2}, s over a geometric
// grid of at least 8 points inside [1e-6, 1e-3].
LowSnrFit fit_low_snr_coefficients(std::span<const double> snr_grid, const std::function<double(double)> &capacity_fn);

// Same, sampling capacity(model, m, .).
LowSnrFit fit_low_snr_coefficients(const ChannelModel &model, ModulationOrder m, std::span<const double> snr_grid);

std::vector<double> geometric_grid(double lo, double hi, int n);

// ---- Monte Carlo verification suite --------------------------------------

struct McConfig
{
    std::string label;
    ChannelModel model;
    ModulationOrder m;
    double snr;
};

struct EntryCheck
{
    std::size_t config;
    int symbol;
    double estimate;
    double reference;
    double sigma;
    bool pass; // |estimate - reference| <= 4 sigma
};

struct SuiteRun
{
    std::uint64_t seed;
    std::vector<EntryCheck> entries;
    int failures;
};

struct SuiteResult
{
    std::vector<SuiteRun> runs; // first run, plus the retry if one was needed
    bool passed;
};

inline constexpr double kMcSigmaBound = 4.0;

// M in {2, 3, 8} against (AWGN, 0 dB), (AWGN, 6 dB), (coherent Rayleigh, 0 dB)
// and (noncoherent Rician K = 1, 6 dB): twelve configurations.
std::vector<McConfig> standard_mc_suite();

// Compares every simulated entry with the quadrature row. sigma is the
// larger of the estimate's standard error and the reference binomial one.
SuiteRun run_mc_suite_once(std::span<const McConfig> suite, std::uint64_t n_samples, std::uint64_t seed);

// Passes when the first run has no failures, or exactly one and a run with
// a second, derived seed has none.
SuiteResult run_mc_suite(std::span<const McConfig> suite, std::uint64_t n_samples, std::uint64_t seed);

} // namespace pskcap
