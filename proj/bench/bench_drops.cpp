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

// Serial reference vs OpenMP drop loop on a one-ring scenario; also checks that both paths
// produce identical results.   bench_drops [n_drops] [n_fading] [workers]

#include "corrdiv/montecarlo.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

int main(int argc, char **argv)
{
    using clock = std::chrono::steady_clock;

    corrdiv::Scenario s;
    s.m = 64;
    s.l = 6;
    s.rho_t_db = 5.0;
    s.model.variant = corrdiv::CorrelationModel::OneRing;
    s.n_drops = argc > 1 ? std::atoi(argv[1]) : 48;
    s.n_fading = argc > 2 ? std::atoi(argv[2]) : 200;
    corrdiv::RunOptions options;
    options.workers = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();

    auto time = [&](auto &&fn) {
        const auto t0 = clock::now();
        auto result = fn();
        return std::pair{std::move(result), std::chrono::duration<double>(clock::now() - t0).count()};
    };

    const auto [serial, ts] = time([&] { return corrdiv::run_scenario_serial(s, options); });
    const auto [parallel, tp] = time([&] { return corrdiv::run_scenario(s, options); });

    const double trials = static_cast<double>(s.n_drops) * s.n_fading;
    std::cout << "scenario: M=" << s.m << " L=" << s.l << " one_ring measured, " << s.n_drops << " drops x "
              << s.n_fading << " trials\n";
    std::cout << "serial:   " << ts << " s (" << 1e6 * ts / trials << " us/trial)\n";
    std::cout << "openmp:   " << tp << " s with " << options.workers << " workers (" << 1e6 * tp / trials
              << " us/trial)\n";
    std::cout << "speedup:  " << ts / tp << "x\n";
    const bool same = serial.drops == parallel.drops && serial.summary == parallel.summary;
    std::cout << "identical results: " << (same ? "yes" : "NO") << "\n";
    return same ? 0 : 1;
}
