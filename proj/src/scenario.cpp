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

#include "corrdiv/scenario.hpp"
#include "corrdiv/error.hpp"

namespace corrdiv
{
    void Scenario::validate() const
    {
        if (l < 1 || m < l)
            throw InvalidParameter("scenario requires 1 <= L <= M");
        if (!std::isfinite(rho_t_db))
            throw InvalidParameter("rho_t_db must be finite");
        if (!(sigma2 > 0.0 && std::isfinite(sigma2)))
            throw InvalidParameter("sigma2 must be positive");
        if (n_drops < 1 || n_fading < 1)
            throw InvalidParameter("n_drops and n_fading must be >= 1");
        model.validate();
        geometry.validate();
        if (measured_model)
            measured_model->validate();
    }

    Scenario baseline_calibration_scenario(const GeometryConfig &geometry, int n_drops, int n_fading,
                                           std::uint64_t seed)
    {
        Scenario s;
        s.m = 64;
        s.l = 6;
        s.rho_t_db = 0.0;
        s.sigma2 = 1.0;
        s.model.variant = CorrelationModel::Exponential;
        s.model.xi = 0.9;
        s.geometry = geometry;
        s.n_drops = n_drops;
        s.n_fading = n_fading;
        s.seed = seed;
        return s;
    }
}
