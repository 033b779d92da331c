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

#ifndef CORRDIV_SCENARIO_HPP
#define CORRDIV_SCENARIO_HPP

#include "corrdiv/corrmodels.hpp"
#include "corrdiv/propagation.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

namespace corrdiv
{
    // Full experiment description. Angles are in degrees, powers in dB where suffixed _db.
    struct Scenario
    {
        int m = 64;
        int l = 6;
        double rho_t_db = 0.0;
        double sigma2 = 1.0;
        CorrelationModelSpec model{};
        GeometryConfig geometry{};
        std::optional<MeasuredAngularModel> measured_model;
        // When set, the attenuation constant is derived from the baseline calibration recipe
        // before the scenario runs; geometry.attenuation_constant is then ignored.
        bool calibrate = false;
        int n_drops = 200;
        int n_fading = 500;
        std::uint64_t seed = 1;

        double rho_t_linear() const { return std::pow(10.0, rho_t_db / 10.0); }

        // Measured-distribution model used for one-ring draws (the fitted defaults if absent).
        MeasuredAngularModel measured() const { return measured_model.value_or(MeasuredAngularModel{}); }

        // Throws InvalidParameter on any violated constraint.
        void validate() const;

        bool operator==(const Scenario &) const = default;
    };

    // The fixed system used to define the attenuation constant: M = 64, L = 6, rho_t = 0 dB,
    // sigma2 = 1, exponential correlation with xi = 0.9.
    Scenario baseline_calibration_scenario(const GeometryConfig &geometry, int n_drops, int n_fading,
                                           std::uint64_t seed);
}

#endif
