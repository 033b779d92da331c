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

#include "corrdiv/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"corrdiv - correlation diversity simulator for zero-forcing MU-MIMO downlinks"};
    app.require_subcommand(1);

    corrdiv::CommandOptions options;
    std::vector<std::filesystem::path> scenarios;
    std::uint64_t seed = 0;
    bool literal = false;

    auto add_common = [&](CLI::App *cmd, bool many) {
        if (many)
            cmd->add_option("--scenario", scenarios, "scenario files (repeat)")->required()->check(CLI::ExistingFile);
        else
            cmd->add_option("--scenario", scenarios, "scenario file")->required()->expected(1)->check(CLI::ExistingFile);
        cmd->add_option("--out", options.out_dir, "output directory");
        cmd->add_option("--seed", seed, "override run.seed");
        cmd->add_option("--workers", options.workers, "OpenMP threads (0: default)")->check(CLI::NonNegativeNumber);
        cmd->add_flag("--closed-form-literal", literal, "use the literal printed closed form (extra factor L)");
    };

    auto *run = app.add_subcommand("run", "simulate one scenario");
    auto *compare = app.add_subcommand("compare", "simulate scenarios and compare their expected-SNR CDFs");
    auto *calibrate = app.add_subcommand("calibrate", "derive the attenuation constant");
    add_common(run, false);
    add_common(compare, true);
    add_common(calibrate, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : corrdiv::kExitInvalidInput;
    }

    for (auto *cmd : {run, compare, calibrate})
    {
        if (cmd->count("--seed") > 0)
            options.seed = seed;
    }
    if (literal)
        options.closed_form = corrdiv::ClosedFormVariant::LiteralPrinted;

    if (*run)
        return corrdiv::cmd_run(scenarios.front(), options, std::cout, std::cerr);
    if (*compare)
        return corrdiv::cmd_compare(scenarios, options, std::cout, std::cerr);
    return corrdiv::cmd_calibrate(scenarios.front(), options, std::cout, std::cerr);
}
