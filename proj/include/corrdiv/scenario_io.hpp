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

#ifndef CORRDIV_SCENARIO_IO_HPP
#define CORRDIV_SCENARIO_IO_HPP

#include "corrdiv/montecarlo.hpp"
#include "corrdiv/scenario.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

namespace corrdiv::io
{
    // Scenario file (YAML):
    //
    //   m: 64
    //   l: 6
    //   rho_t_db: 5
    //   sigma2: 1
    //   model:
    //     type: exponential | clerckx | one_ring
    //     xi: 0.9                          # exponential, clerckx
    //     phase_range_deg: [0, 38]         # clerckx
    //     angular_spread_deg: 14.02        # one_ring; or "measured"
    //     mean_doa: uniform                # one_ring; or a fixed angle in degrees
    //     spacing_wavelengths: 0.5         # one_ring, optional
    //     measured: {spread_mean_deg: 14.02, spread_std_deg: 6.45, spread_floor_deg: 1}
    //   geometry:
    //     cell_radius_m: 500
    //     reference_distance_m: 50
    //     alpha: 3.67
    //     sigma_sh_db: 6
    //     attenuation_constant: 1.0e5      # or  calibrate: true
    //   run: {n_drops: 200, n_fading: 500, seed: 1}
    //
    // Unknown keys, and keys that do not apply to the chosen model type, are rejected.
    // Every diagnostic is a ParseError naming the source line and the dotted key.
    Scenario parse_scenario(std::string_view text, const std::string &source = "<scenario>");
    Scenario load_scenario(const std::filesystem::path &path);

    // Emits a document that parse_scenario maps back to an identical Scenario.
    std::string write_scenario(const Scenario &scenario);

    // Shortest decimal form that round-trips the double, locale-independent.
    std::string format_double(double value);

    void write_drops_csv(std::ostream &out, const RunResult &run);
    void write_summary_csv(std::ostream &out, const RunSummary &summary);
}

#endif
