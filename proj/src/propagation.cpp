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

#include "corrdiv/propagation.hpp"
#include "corrdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace corrdiv
{
    namespace
    {
        constexpr int kMaxSpreadRedraws = 100000;
    }

    void GeometryConfig::validate() const
    {
        if (!(reference_distance_m > 0.0 && reference_distance_m < cell_radius_m && std::isfinite(cell_radius_m)))
            throw InvalidParameter("geometry requires 0 < reference distance < cell radius");
        if (!(attenuation_exponent > 0.0 && std::isfinite(attenuation_exponent)))
            throw InvalidParameter("attenuation exponent must be positive");
        if (!(shadowing_std_db >= 0.0 && std::isfinite(shadowing_std_db)))
            throw InvalidParameter("shadowing standard deviation must be >= 0 dB");
        if (!(attenuation_constant > 0.0 && std::isfinite(attenuation_constant)))
            throw InvalidParameter("attenuation constant must be positive");
    }

    void MeasuredAngularModel::validate() const
    {
        if (!(spread_floor_deg > 0.0 && spread_floor_deg <= 180.0))
            throw InvalidParameter("angular spread floor must lie in (0, 180] degrees");
        if (!(spread_std_deg >= 0.0 && std::isfinite(spread_std_deg) && std::isfinite(spread_mean_deg)))
            throw InvalidParameter("angular spread distribution needs a finite mean and std >= 0");
        if (spread_std_deg == 0.0 && spread_mean_deg < spread_floor_deg)
            throw InvalidParameter("degenerate angular spread distribution lies below its floor");
        if (spread_std_deg > 0.0 && (spread_floor_deg - spread_mean_deg) / spread_std_deg > 6.0)
            throw InvalidParameter("angular spread floor is more than 6 std above the mean");
        if (spread_mean_deg > 180.0 && spread_std_deg == 0.0)
            throw InvalidParameter("angular spread must not exceed 180 degrees");
        if (!(doa_low_deg <= doa_high_deg && std::isfinite(doa_low_deg) && std::isfinite(doa_high_deg)))
            throw InvalidParameter("mean DOA range must be a finite interval");
    }

    TerminalPosition sample_terminal_geometry(const GeometryConfig &config, Philox4x32 &rng)
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_real_distribution<double> bearing(-180.0, 180.0);

        const double r0 = config.reference_distance_m;
        const double rc = config.cell_radius_m;
        const double u = unit(rng);
        double r = 0.0;
        if (config.radial == RadialDistribution::AreaUniform)
            r = std::sqrt(r0 * r0 + u * (rc * rc - r0 * r0)); // inverse of F(r) = (r^2 - r0^2)/(Rc^2 - r0^2)
        else
            r = r0 + u * (rc - r0);

        return {std::clamp(r, r0, rc), bearing(rng)};
    }

    double link_gain(const GeometryConfig &config, double distance_m, double shadowing_linear)
    {
        return config.attenuation_constant * shadowing_linear *
               std::pow(config.reference_distance_m / distance_m, config.attenuation_exponent);
    }

    LinkGain sample_link_gain(const GeometryConfig &config, double distance_m, Philox4x32 &rng)
    {
        double shadowing_db = 0.0;
        if (config.shadowing_std_db > 0.0)
        {
            std::normal_distribution<double> normal(0.0, config.shadowing_std_db);
            shadowing_db = normal(rng);
        }
        const double zeta = std::pow(10.0, shadowing_db / 10.0);
        return {zeta, link_gain(config, distance_m, zeta)};
    }

    AngularDraw sample_angular_params(const MeasuredAngularModel &model, Philox4x32 &rng)
    {
        double spread = model.spread_mean_deg;
        if (model.spread_std_deg > 0.0)
        {
            std::normal_distribution<double> normal(model.spread_mean_deg, model.spread_std_deg);
            int attempts = 0;
            do
            {
                if (++attempts > kMaxSpreadRedraws)
                    throw InvalidParameter("angular spread redraw limit reached");
                spread = normal(rng);
            } while (spread < model.spread_floor_deg || spread > 180.0);
        }
        std::uniform_real_distribution<double> doa(model.doa_low_deg, model.doa_high_deg);
        return {spread, doa(rng)};
    }
}
