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

#ifndef CORRDIV_COMMANDS_HPP
#define CORRDIV_COMMANDS_HPP

#include "corrdiv/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

namespace corrdiv
{
    // Exit statuses shared by all subcommands.
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitRunFailure = 1;
    inline constexpr int kExitInvalidInput = 2;

    struct CommandOptions
    {
        std::filesystem::path out_dir;         // empty: cwd for run/compare, next to the input for calibrate
        std::optional<std::uint64_t> seed;     // overrides run.seed of every scenario
        int workers = 0;
        ClosedFormVariant closed_form = ClosedFormVariant::DerivationConsistent;
    };

    // Writes drops.csv, summary.csv, diagnostics.csv and manifest.yaml into out_dir.
    int cmd_run(const std::filesystem::path &scenario_path, const CommandOptions &options, std::ostream &out,
                std::ostream &err);

    // Writes cdf.csv (expected-SNR CDF per scenario), gains.csv (median gain of every later
    // scenario over every earlier one) and summary.csv.
    int cmd_compare(const std::vector<std::filesystem::path> &scenario_paths, const CommandOptions &options,
                    std::ostream &out, std::ostream &err);

    // Prints A and the achieved 5th percentile, and writes <stem>.calibrated.yaml.
    int cmd_calibrate(const std::filesystem::path &scenario_path, const CommandOptions &options, std::ostream &out,
                      std::ostream &err);
}

#endif
