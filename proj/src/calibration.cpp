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

#include "corrdiv/calibration.hpp"
#include "corrdiv/error.hpp"

#include <cmath>

namespace corrdiv
{
    namespace
    {
        double percentile_db(const Scenario &s, const RunOptions &options, std::size_t *count = nullptr)
        {
            auto samples = collect_instantaneous_snr(s, options);
            if (count)
                *count = samples.size();
            return to_db(EmpiricalCdf(std::move(samples)).percentile(kCalibrationPercentile));
        }

        Scenario with_attenuation(Scenario s, double a)
        {
            s.geometry.attenuation_constant = a;
            s.calibrate = false;
            return s;
        }
    }

    CalibrationResult calibrate_attenuation_constant(const Scenario &baseline, const RunOptions &options)
    {
        CalibrationResult result;
        const double reference_db = percentile_db(with_attenuation(baseline, 1.0), options, &result.samples);
        result.attenuation_constant = from_db(-reference_db);
        result.achieved_percentile_db = percentile_db(with_attenuation(baseline, result.attenuation_constant), options);
        result.iterations = 1;
        return result;
    }

    CalibrationResult calibrate_attenuation_constant_bisection(const Scenario &baseline, const RunOptions &options,
                                                               double tol_db, int max_iterations)
    {
        double lo = -200.0, hi = 200.0; // log2(A)
        for (int it = 1; it <= max_iterations; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            CalibrationResult result;
            result.attenuation_constant = std::exp2(mid);
            result.achieved_percentile_db =
                percentile_db(with_attenuation(baseline, result.attenuation_constant), options, &result.samples);
            result.iterations = it;
            if (std::abs(result.achieved_percentile_db) <= tol_db)
                return result;
            (result.achieved_percentile_db < 0.0 ? lo : hi) = mid;
        }
        throw CalibrationNonconvergence("attenuation-constant bisection did not reach " + std::to_string(tol_db) +
                                        " dB in " + std::to_string(max_iterations) + " iterations");
    }

    Scenario resolve_attenuation(const Scenario &scenario, const RunOptions &options, CalibrationResult *calibration)
    {
        if (!scenario.calibrate)
            return scenario;
        const auto baseline =
            baseline_calibration_scenario(scenario.geometry, scenario.n_drops, scenario.n_fading, scenario.seed);
        const auto result = calibrate_attenuation_constant(baseline, options);
        if (calibration)
            *calibration = result;
        return with_attenuation(scenario, result.attenuation_constant);
    }
}
