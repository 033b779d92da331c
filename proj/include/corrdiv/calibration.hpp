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

#ifndef CORRDIV_CALIBRATION_HPP
#define CORRDIV_CALIBRATION_HPP

#include "corrdiv/montecarlo.hpp"
#include "corrdiv/scenario.hpp"

namespace corrdiv
{
    // Percentile of the per-terminal instantaneous ZF SNR pinned by the calibration.
    inline constexpr double kCalibrationPercentile = 5.0;

    struct CalibrationResult
    {
        double attenuation_constant = 0.0;
        // Percentile of the instantaneous SNR re-simulated with the calibrated constant.
        double achieved_percentile_db = 0.0;
        std::size_t samples = 0;
        int iterations = 0;
    };

    // Finds A such that the 5th percentile of instantaneous ZF SNR over drops and fading of
    // `baseline` is 0 dB. SNR is linear in A, so one pass at A = 1 fixes A = 1 / p5; a second
    // pass at the calibrated A measures what was achieved. The baseline's own attenuation
    // constant is ignored.
    CalibrationResult calibrate_attenuation_constant(const Scenario &baseline, const RunOptions &options = {});

    // Bisection on log2(A) with full re-simulation per step; a slow oracle for the rescale path.
    // Stops when |p5| <= tol_db, and throws CalibrationNonconvergence after max_iterations.
    CalibrationResult calibrate_attenuation_constant_bisection(const Scenario &baseline, const RunOptions &options = {},
                                                               double tol_db = 1e-6, int max_iterations = 60);

    // Returns `scenario` with A resolved: if scenario.calibrate is set, A comes from the
    // baseline recipe run with the scenario's geometry, run sizes and seed.
    Scenario resolve_attenuation(const Scenario &scenario, const RunOptions &options = {},
                                 CalibrationResult *calibration = nullptr);
}

#endif
