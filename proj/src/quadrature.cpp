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

#include "corrdiv/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace corrdiv::quadrature
{
    namespace
    {
        GaussLegendreRule compute_rule(std::size_t n)
        {
            GaussLegendreRule rule;
            rule.nodes.resize(n);
            rule.weights.resize(n);
            const std::size_t half = (n + 1) / 2;
            const double dn = static_cast<double>(n);

            for (std::size_t i = 0; i < half; ++i)
            {
                // Tricomi initial guess for the i-th largest root
                double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
                double dp = 0.0;
                for (int iter = 0; iter < 100; ++iter)
                {
                    double p1 = 1.0, p2 = 0.0;
                    for (std::size_t j = 1; j <= n; ++j)
                    {
                        const double p3 = p2;
                        p2 = p1;
                        const double dj = static_cast<double>(j);
                        p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
                    }
                    dp = dn * (z * p1 - p2) / (z * z - 1.0);
                    const double step = p1 / dp;
                    z -= step;
                    if (std::abs(step) < 1e-16)
                        break;
                }
                const double w = 2.0 / ((1.0 - z * z) * dp * dp);
                rule.nodes[i] = -z;
                rule.nodes[n - 1 - i] = z;
                rule.weights[i] = w;
                rule.weights[n - 1 - i] = w;
            }
            if (n % 2 == 1)
                rule.nodes[n / 2] = 0.0;
            return rule;
        }
    }

    const GaussLegendreRule &gauss_legendre(std::size_t order)
    {
        if (order == 0)
            throw InvalidParameter("Gauss-Legendre order must be positive");

        static std::mutex mutex;
        static std::map<std::size_t, std::unique_ptr<const GaussLegendreRule>> cache;

        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(order);
        if (it == cache.end())
            it = cache.emplace(order, std::make_unique<const GaussLegendreRule>(compute_rule(order))).first;
        return *it->second;
    }
}
