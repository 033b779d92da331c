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

#include "corrdiv/montecarlo.hpp"
#include "corrdiv/error.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <random>

namespace corrdiv
{
    namespace
    {
        // Outcome slot of one drop; exactly one of the members is set after the drop ran.
        struct DropSlot
        {
            std::optional<DropResult> result;
            std::optional<std::string> abort_reason;
            std::exception_ptr error;
            std::vector<double> instantaneous;
        };

        void execute_drop(const Scenario &scenario, std::uint32_t drop, ClosedFormVariant variant, bool keep_samples,
                          DropSlot &slot)
        {
            try
            {
                slot.result = run_drop(scenario, drop, variant, keep_samples ? &slot.instantaneous : nullptr);
            }
            catch (const RunFailure &e)
            {
                slot.abort_reason = e.what();
                slot.instantaneous.clear();
            }
            catch (...)
            {
                slot.error = std::current_exception();
            }
        }

        std::vector<DropSlot> run_drops(const Scenario &scenario, const RunOptions &options, bool keep_samples,
                                        bool parallel)
        {
            scenario.validate();
            const auto n = static_cast<std::size_t>(scenario.n_drops);
            std::vector<DropSlot> slots(n);

            if (parallel)
            {
                const int workers = options.workers > 0 ? options.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
                for (std::size_t i = 0; i < n; ++i)
                    execute_drop(scenario, static_cast<std::uint32_t>(i), options.closed_form, keep_samples, slots[i]);
            }
            else
            {
                for (std::size_t i = 0; i < n; ++i)
                    execute_drop(scenario, static_cast<std::uint32_t>(i), options.closed_form, keep_samples, slots[i]);
            }

            std::size_t aborted = 0;
            const std::string *first_reason = nullptr;
            for (const auto &slot : slots)
            {
                if (slot.error)
                    std::rethrow_exception(slot.error);
                if (slot.abort_reason)
                {
                    ++aborted;
                    if (!first_reason)
                        first_reason = &*slot.abort_reason;
                }
            }
            if (static_cast<double>(aborted) > kMaxAbortedDropRatio * static_cast<double>(n))
                throw RunFailure(std::to_string(aborted) + " of " + std::to_string(n) +
                                 " drops aborted; first: " + *first_reason);
            return slots;
        }

        RunResult assemble(std::vector<DropSlot> slots)
        {
            RunResult run;
            for (std::size_t i = 0; i < slots.size(); ++i)
            {
                if (slots[i].result)
                    run.drops.push_back(std::move(*slots[i].result));
                else
                    run.failures.push_back({static_cast<std::uint32_t>(i), *slots[i].abort_reason});
            }
            run.summary = summarize(run.drops, run.failures.size());
            return run;
        }
    }

    std::vector<TerminalProfile> sample_drop_terminals(const Scenario &scenario, std::uint32_t drop_index)
    {
        auto geometry_rng = make_stream(scenario.seed, StreamPurpose::Geometry, drop_index);
        auto shadowing_rng = make_stream(scenario.seed, StreamPurpose::Shadowing, drop_index);
        auto params_rng = make_stream(scenario.seed, StreamPurpose::ModelParameters, drop_index);
        const MeasuredAngularModel measured = scenario.measured();
        const auto &model = scenario.model;

        std::vector<TerminalProfile> terminals(static_cast<std::size_t>(scenario.l));
        for (auto &t : terminals)
        {
            const auto position = sample_terminal_geometry(scenario.geometry, geometry_rng);
            const auto gain = sample_link_gain(scenario.geometry, position.distance_m, shadowing_rng);
            t.distance_m = position.distance_m;
            t.azimuth_deg = position.azimuth_deg;
            t.shadowing_linear = gain.shadowing_linear;
            t.link_gain = gain.link_gain;

            t.correlation.variant = model.variant;
            t.correlation.xi = model.xi;
            t.correlation.element_spacing_wavelengths = model.element_spacing_wavelengths;
            switch (model.variant)
            {
            case CorrelationModel::Exponential:
                break;
            case CorrelationModel::Clerckx:
            {
                std::uniform_real_distribution<double> phase(model.phase_range_deg.low_deg,
                                                              model.phase_range_deg.high_deg);
                t.correlation.phase_deg = phase(params_rng);
                break;
            }
            case CorrelationModel::OneRing:
            {
                // Always draw both parameters so that fixed and distributed variants sharing a
                // seed consume the stream identically (and therefore see the same mean DOAs).
                const auto draw = sample_angular_params(measured, params_rng);
                t.correlation.angular_spread_deg = model.angular_spread_deg.value_or(draw.angular_spread_deg);
                t.correlation.mean_doa_deg = model.mean_doa_deg.value_or(draw.mean_doa_deg);
                break;
            }
            }
        }
        return terminals;
    }

    DropResult run_drop(const Scenario &scenario, std::uint32_t drop_index, ClosedFormVariant closed_form,
                        std::vector<double> *instantaneous_snr)
    {
        scenario.validate();
        const auto m = static_cast<Eigen::Index>(scenario.m);
        const auto l = static_cast<std::size_t>(scenario.l);
        const double rho_t = scenario.rho_t_linear();

        DropResult drop;
        drop.drop_index = drop_index;
        drop.terminals = sample_drop_terminals(scenario, drop_index);

        std::vector<CorrelationMatrix> rs;
        std::vector<CorrelationFactor> factors;
        std::vector<double> betas;
        rs.reserve(l);
        factors.reserve(l);
        betas.reserve(l);
        for (const auto &t : drop.terminals)
        {
            rs.push_back(build_correlation(m, t.correlation));
            factors.push_back(factor(rs.back()));
            betas.push_back(t.link_gain);
        }
        drop.trace_sq = average_correlation(rs).trace_sq;

        const double max_rejected = kMaxRejectedTrialRatio * static_cast<double>(scenario.n_fading);
        std::vector<double> snr_sum(l, 0.0);
        double se_sum = 0.0;
        double eta_mean = 0.0, eta_m2 = 0.0; // Welford

        if (instantaneous_snr)
            instantaneous_snr->reserve(instantaneous_snr->size() + l * static_cast<std::size_t>(scenario.n_fading));

        for (int trial = 0; trial < scenario.n_fading; ++trial)
        {
            double eta = 0.0;
            for (std::uint32_t attempt = 0;; ++attempt)
            {
                auto rng = make_stream(scenario.seed, StreamPurpose::Fading, drop_index,
                                       static_cast<std::uint32_t>(trial), attempt);
                const auto h = sample_channel(factors, rng);
                try
                {
                    eta = zf_eta_exact(h);
                    break;
                }
                catch (const IllConditionedChannel &)
                {
                    ++drop.rejected_trials;
                    if (static_cast<double>(drop.rejected_trials) > max_rejected)
                        throw RunFailure("drop " + std::to_string(drop_index) + ": " +
                                         std::to_string(drop.rejected_trials) + " ill-conditioned trials exceed " +
                                         std::to_string(kMaxRejectedTrialRatio * 100.0) + "% of " +
                                         std::to_string(scenario.n_fading));
                }
            }

            const auto report = zf_snr_from_eta(eta, betas, rho_t, scenario.sigma2);
            for (std::size_t k = 0; k < l; ++k)
                snr_sum[k] += report.per_terminal_snr_linear[k];
            se_sum += report.sum_se_bits;
            if (instantaneous_snr)
                instantaneous_snr->insert(instantaneous_snr->end(), report.per_terminal_snr_linear.begin(),
                                          report.per_terminal_snr_linear.end());

            const double delta = eta - eta_mean;
            eta_mean += delta / static_cast<double>(trial + 1);
            eta_m2 += delta * (eta - eta_mean);
        }

        const double trials = static_cast<double>(scenario.n_fading);
        drop.expected_snr_sim_db.reserve(l);
        drop.expected_snr_cf_db.reserve(l);
        for (std::size_t k = 0; k < l; ++k)
        {
            drop.expected_snr_sim_db.push_back(to_db(snr_sum[k] / trials));
            drop.expected_snr_cf_db.push_back(to_db(
                expected_zf_snr_closed_form(betas[k], m, scenario.l, drop.trace_sq, rho_t, scenario.sigma2, closed_form)));
        }
        drop.sum_se_sim_bits = se_sum / trials;
        drop.sum_se_cf_bits = expected_sum_se_closed_form(betas, m, drop.trace_sq, rho_t, scenario.sigma2, closed_form);
        drop.eta_mean = eta_mean;
        drop.eta_cv = scenario.n_fading > 1 ? std::sqrt(eta_m2 / (trials - 1.0)) / eta_mean : 0.0;
        return drop;
    }

    RunResult run_scenario(const Scenario &scenario, const RunOptions &options)
    {
        return assemble(run_drops(scenario, options, false, true));
    }

    RunResult run_scenario_serial(const Scenario &scenario, const RunOptions &options)
    {
        return assemble(run_drops(scenario, options, false, false));
    }

    std::vector<double> collect_instantaneous_snr(const Scenario &scenario, const RunOptions &options)
    {
        auto slots = run_drops(scenario, options, true, true);
        std::vector<double> samples;
        for (auto &slot : slots)
            samples.insert(samples.end(), slot.instantaneous.begin(), slot.instantaneous.end());
        return samples;
    }

    RunSummary summarize(std::span<const DropResult> drops, std::size_t aborted)
    {
        RunSummary summary;
        summary.drops_completed = drops.size();
        summary.drops_aborted = aborted;
        if (drops.empty())
            return summary;

        std::vector<double> sim, cf, gap, se_sim, se_cf;
        double cv_sum = 0.0;
        for (const auto &d : drops)
        {
            for (std::size_t k = 0; k < d.expected_snr_sim_db.size(); ++k)
            {
                sim.push_back(d.expected_snr_sim_db[k]);
                cf.push_back(d.expected_snr_cf_db[k]);
                gap.push_back(std::abs(d.expected_snr_cf_db[k] - d.expected_snr_sim_db[k]));
            }
            se_sim.push_back(d.sum_se_sim_bits);
            se_cf.push_back(d.sum_se_cf_bits);
            summary.rejected_trials += d.rejected_trials;
            cv_sum += d.eta_cv;
        }
        summary.expected_snr_sim_db = EmpiricalCdf(std::move(sim)).summary();
        summary.expected_snr_cf_db = EmpiricalCdf(std::move(cf)).summary();
        summary.abs_gap_db = EmpiricalCdf(std::move(gap)).summary();
        summary.sum_se_sim_bits = EmpiricalCdf(std::move(se_sim)).summary();
        summary.sum_se_cf_bits = EmpiricalCdf(std::move(se_cf)).summary();
        summary.mean_eta_cv = cv_sum / static_cast<double>(drops.size());
        return summary;
    }

    EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples))
    {
        if (sorted_.empty())
            throw InvalidParameter("empirical CDF needs at least one sample");
        if (std::any_of(sorted_.begin(), sorted_.end(), [](double v) { return std::isnan(v); }))
            throw InvalidParameter("empirical CDF samples must not be NaN");
        std::sort(sorted_.begin(), sorted_.end());
    }

    std::vector<CdfPoint> EmpiricalCdf::points() const
    {
        std::vector<CdfPoint> pts;
        pts.reserve(sorted_.size());
        const double n = static_cast<double>(sorted_.size());
        for (std::size_t i = 0; i < sorted_.size(); ++i)
            pts.push_back({sorted_[i], static_cast<double>(i + 1) / n});
        return pts;
    }

    double EmpiricalCdf::percentile(double percent) const
    {
        if (!(percent >= 0.0 && percent <= 100.0))
            throw InvalidParameter("percentile must lie in [0, 100]");
        const double h = static_cast<double>(sorted_.size() - 1) * percent / 100.0;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const auto hi = std::min(lo + 1, sorted_.size() - 1);
        const double frac = h - static_cast<double>(lo);
        if (frac == 0.0)
            return sorted_[lo];
        return sorted_[lo] + frac * (sorted_[hi] - sorted_[lo]);
    }

    double EmpiricalCdf::mean() const
    {
        return std::accumulate(sorted_.begin(), sorted_.end(), 0.0) / static_cast<double>(sorted_.size());
    }

    DistributionSummary EmpiricalCdf::summary() const
    {
        return {mean(), median(), percentile(5.0), percentile(95.0)};
    }

    std::vector<CdfPoint> empirical_cdf(std::vector<double> samples)
    {
        return EmpiricalCdf(std::move(samples)).points();
    }
}
