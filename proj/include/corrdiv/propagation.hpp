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

#ifndef CORRDIV_PROPAGATION_HPP
#define CORRDIV_PROPAGATION_HPP

#include "corrdiv/corrmodels.hpp"
#include "corrdiv/rng.hpp"

namespace corrdiv
{
    enum class RadialDistribution
    {
        AreaUniform,   // uniform over the annulus area (default cell drop)
        RadiusUniform, // uniform in distance; only used for sensitivity studies
    };

    // Large-scale propagation constants of the single circular cell.
    struct GeometryConfig
    {
        double cell_radius_m = 500.0;
        double reference_distance_m = 50.0;
        double attenuation_exponent = 3.67;
        double shadowing_std_db = 6.0;
        double attenuation_constant = 1.0;
        RadialDistribution radial = RadialDistribution::AreaUniform;

        // 0 < r0 < Rc, alpha > 0, sigma_sh >= 0, A > 0
        void validate() const;

        bool operator==(const GeometryConfig &) const = default;
    };

    // Fitted distributions of the measured angular parameters.
    struct MeasuredAngularModel
    {
        double spread_mean_deg = 14.02;
        double spread_std_deg = 6.45;
        double doa_low_deg = -180.0;
        double doa_high_deg = 180.0;
        double spread_floor_deg = 1.0;

        void validate() const;

        bool operator==(const MeasuredAngularModel &) const = default;
    };

    struct TerminalPosition
    {
        double distance_m;
        double azimuth_deg;
    };

    struct LinkGain
    {
        double shadowing_linear;
        double link_gain;
    };

    struct AngularDraw
    {
        double angular_spread_deg;
        double mean_doa_deg;
    };

    struct TerminalProfile
    {
        double distance_m = 0.0;
        double azimuth_deg = 0.0;
        double shadowing_linear = 1.0;
        double link_gain = 0.0;
        TerminalCorrelation correlation{};

        bool operator==(const TerminalProfile &) const = default;
    };

    // Azimuth ~ U[-180, 180] deg; distance area-uniform (or radius-uniform) in [r0, Rc].
    // `config` must already be validated.
    TerminalPosition sample_terminal_geometry(const GeometryConfig &config, Philox4x32 &rng);

    // beta = A * zeta * (r0 / r)^alpha
    double link_gain(const GeometryConfig &config, double distance_m, double shadowing_linear);

    // 10 log10(zeta) ~ N(0, sigma_sh^2), then the link gain for that shadowing.
    LinkGain sample_link_gain(const GeometryConfig &config, double distance_m, Philox4x32 &rng);

    // Spread ~ N(mean, std) redrawn until >= floor; mean DOA ~ U[doa_low, doa_high].
    AngularDraw sample_angular_params(const MeasuredAngularModel &model, Philox4x32 &rng);
}

#endif
