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

#include "corrdiv/error.hpp"
#include "corrdiv/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

namespace q = corrdiv::quadrature;

TEST_SUITE("quadrature")
{
    TEST_CASE("gauss-legendre rule integrates polynomials of degree 2n-1 exactly")
    {
        for (std::size_t n : {2u, 5u, 32u, 64u})
        {
            const auto &rule = q::gauss_legendre(n);
            REQUIRE(rule.nodes.size() == n);
            double wsum = 0.0;
            for (double w : rule.weights)
                wsum += w;
            CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
            const int deg = static_cast<int>(2 * n - 2); // even, nonzero integral
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += rule.weights[k] * std::pow(rule.nodes[k], deg);
            CHECK(s == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-12));
        }
    }

    TEST_CASE("doubling converges on a smooth oscillatory integrand")
    {
        // int_0^pi cos(20 sin x) dx = pi J0(20)
        const auto r = q::integrate_doubling([](double x) { return std::cos(20.0 * std::sin(x)); }, 0.0,
                                             std::numbers::pi);
        CHECK(r.value == doctest::Approx(std::numbers::pi * std::cyl_bessel_j(0.0, 20.0)).epsilon(1e-10));
        CHECK(r.order >= 64);
    }

    TEST_CASE("nonconvergence is reported")
    {
        q::DoublingOptions opt;
        opt.max_order = 64;
        CHECK_THROWS_AS(q::integrate_doubling([](double x) { return std::cos(2000.0 * x); }, 0.0, 1.0, opt),
                        corrdiv::QuadratureNonconvergence);
    }
}
