// SPDX-License-Identifier: Apache-2.0
//
// corrdiv - correlation diversity simulator for zero-forcing MU-MIMO downlinks
// Copyright (C) 2026 The corrdiv authors
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

#ifndef CORRDIV_MONTECARLO_HPP
#define CORRDIV_MONTECARLO_HPP

#include "corrdiv/propagation.hpp"
#include "corrdiv/scenario.hpp"
#include "corrdiv/zfcore.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace corrdiv
{
    // A drop aborts once more than this fraction of its fading trials had to be resampled.
    inline constexpr double kMaxRejectedTrialRatio = 0.05;
    // A run fails once more than this fraction of its drops aborted.
    inline constexpr double kMaxAbortedDropRatio = 0.01;

    struct RunOptions
    {
        // OpenMP threads for the drop loop; 0 uses the OpenMP default.
        int workers = 0;
        ClosedFormVariant closed_form = ClosedFormVariant::DerivationConsistent;
    };

    struct DropResult
    {
        std::uint32_t drop_index = 0;
        std::vector<TerminalProfile> terminals;
        std::vector<double> expected_snr_sim_db; // fading-averaged, per terminal
        std::vector<double> expected_snr_cf_db;  // closed form from the same {R_l, beta_l}
        double sum_se_sim_bits = 0.0;
        double sum_se_cf_bits = 0.0;
        double trace_sq = 0.0;
        std::uint32_t rejected_trials = 0;
        // Mean and coefficient of variation of eta over the accepted trials; the CV tracks how
        // well E{1/X} ~ 1/E{X} can be expected to hold for this drop.
        double eta_mean = 0.0;
        double eta_cv = 0.0;

        bool operator==(const DropResult &) const = default;
    };

    struct DropFailure
    {
        std::uint32_t drop_index;
        std::string message;
    };

    struct DistributionSummary
    {
        double mean = 0.0;
        double median = 0.0;
        double p5 = 0.0;
        double p95 = 0.0;

        bool operator==(const DistributionSummary &) const = default;
    };

    struct RunSummary
    {
        std::size_t drops_completed = 0;
        std::size_t drops_aborted = 0;
        std::uint64_t rejected_trials = 0;
        // Pooled over drops x terminals.
        DistributionSummary expected_snr_sim_db;
        DistributionSummary expected_snr_cf_db;
        // |closed form - simulated| expected SNR in dB, pooled over drops x terminals.
        DistributionSummary abs_gap_db;
        // One value per drop.
        DistributionSummary sum_se_sim_bits;
        DistributionSummary sum_se_cf_bits;
        double mean_eta_cv = 0.0;

        bool operator==(const RunSummary &) const = default;
    };

    struct RunResult
    {
        std::vector<DropResult> drops; // ordered by drop index
        std::vector<DropFailure> failures;
        RunSummary summary;
    };

    // Link gains and resolved correlation parameters of every terminal in a drop.
    // Deterministic in (scenario.seed, drop_index).
    std::vector<TerminalProfile> sample_drop_terminals(const Scenario &scenario, std::uint32_t drop_index);

    // One drop: terminal draws, {R_l} and factors built once, then n_fading channel trials.
    // Ill-conditioned trials are resampled from fresh attempt streams and counted.
    // If `instantaneous_snr` is given, every accepted trial appends its L linear SNRs to it.
    // Throws RunFailure when the rejected-trial ratio exceeds kMaxRejectedTrialRatio.
    DropResult run_drop(const Scenario &scenario, std::uint32_t drop_index,
                        ClosedFormVariant closed_form = ClosedFormVariant::DerivationConsistent,
                        std::vector<double> *instantaneous_snr = nullptr);

    // OpenMP drop-parallel run. The result is bit-identical for any worker count.
    RunResult run_scenario(const Scenario &scenario, const RunOptions &options = {});

    // Serial reference used by tests and the benchmark; same result as run_scenario.
    RunResult run_scenario_serial(const Scenario &scenario, const RunOptions &options = {});

    // Per-terminal instantaneous ZF SNRs (linear) over all drops and fading trials, ordered
    // by (drop, trial, terminal).
    std::vector<double> collect_instantaneous_snr(const Scenario &scenario, const RunOptions &options = {});

    RunSummary summarize(std::span<const DropResult> drops, std::size_t aborted = 0);

    struct CdfPoint
    {
        double value;
        double probability;
    };

    // Sorted sample set with step CDF i/n at the i-th order statistic and linearly
    // interpolated percentiles (position (n - 1) p between order statistics).
    class EmpiricalCdf
    {
    public:
        // Throws InvalidParameter on empty input or NaN samples.
        explicit EmpiricalCdf(std::vector<double> samples);

        std::size_t size() const { return sorted_.size(); }
        const std::vector<double> &sorted() const { return sorted_; }
        std::vector<CdfPoint> points() const;

        // percent in [0, 100]
        double percentile(double percent) const;
        double median() const { return percentile(50.0); }
        double mean() const;

        DistributionSummary summary() const;

    private:
        std::vector<double> sorted_;
    };

    std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);

    inline double to_db(double linear) { return 10.0 * std::log10(linear); }
    inline double from_db(double db) { return std::pow(10.0, db / 10.0); }
}

#endif
