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

#ifndef CORRDIV_QUADRATURE_HPP
#define CORRDIV_QUADRATURE_HPP

#include "corrdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace corrdiv::quadrature
{
    // Nodes and weights on [-1, 1].
    struct GaussLegendreRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    // Rules are computed once per order by Newton iteration on the Legendre recurrence and cached.
    // The returned reference stays valid for the lifetime of the program. Thread-safe.
    const GaussLegendreRule &gauss_legendre(std::size_t order);

    struct DoublingOptions
    {
        std::size_t start_order = 32;
        std::size_t max_order = 4096;
        double rel_tol = 1e-10;
        // Convergence is |I_2n - I_n| <= rel_tol * max(|I_2n|, scale_floor).
        double scale_floor = 0.0;
    };

    template <class T>
    struct QuadratureResult
    {
        T value;
        std::size_t order;
    };

    // Fixed-order Gauss-Legendre on [a, b], order doubled until two successive results agree.
    // Throws QuadratureNonconvergence if max_order is reached without agreement.
    template <class Func>
    auto integrate_doubling(const Func &f, double a, double b, const DoublingOptions &opt = {})
    {
        using T = decltype(f(a));
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (b + a);

        auto apply = [&](std::size_t order)
        {
            const auto &rule = gauss_legendre(order);
            T sum{};
            for (std::size_t k = 0; k < order; ++k)
                sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
            return T(sum * half);
        };

        std::size_t order = opt.start_order;
        T previous = apply(order);
        while (order < opt.max_order)
        {
            order *= 2;
            const T current = apply(order);
            const double scale = std::max(std::abs(current), opt.scale_floor);
            if (std::abs(current - previous) <= opt.rel_tol * scale)
                return QuadratureResult<T>{current, order};
            previous = current;
        }
        throw QuadratureNonconvergence("Gauss-Legendre doubling did not converge up to order " +
                                       std::to_string(opt.max_order));
    }
}

#endif
