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
#include "corrdiv/montecarlo.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace corrdiv;

namespace
{
    Scenario small(CorrelationModel variant, int m = 16, int l = 4)
    {
        Scenario s;
        s.m = m;
        s.l = l;
        s.rho_t_db = 5.0;
        s.model.variant = variant;
        s.model.xi = 0.9;
        s.geometry.attenuation_constant = 1e4;
        s.n_drops = 20;
        s.n_fading = 40;
        s.seed = 99;
        if (variant == CorrelationModel::Clerckx)
            s.model.phase_range_deg = {0.0, 38.0};
        if (variant == CorrelationModel::OneRing)
            s.model.angular_spread_deg = 14.02;
        return s;
    }
}

TEST_SUITE("montecarlo")
{
    TEST_CASE("drop is a deterministic function of seed and index")
    {
        auto s = small(CorrelationModel::OneRing);
        s.n_fading = 1;
        const auto a = run_drop(s, 3);
        CHECK(a == run_drop(s, 3));
        CHECK(!(a == run_drop(s, 4)));
        s.seed = 100;
        CHECK(!(a == run_drop(s, 3)));
    }

    TEST_CASE("exponential profiles share one correlation matrix")
    {
        const auto s = small(CorrelationModel::Exponential);
        const auto r = build_exponential(s.m, s.model.xi);
        const double tr = (r.matrix() * r.matrix()).trace().real();
        const auto run = run_scenario(s);
        for (const auto &d : run.drops)
            CHECK(d.trace_sq == doctest::Approx(tr).epsilon(1e-12));
    }

    TEST_CASE("iid fading average against the Wishart prediction")
    {
        auto s = small(CorrelationModel::Exponential, 16, 2);
        s.model.xi = 0.0;
        s.n_fading = 10000;
        s.sigma2 = 0.5;
        const auto d = run_drop(s, 0);
        for (std::size_t k = 0; k < 2; ++k)
        {
            const double predicted =
                to_db(s.rho_t_linear() * d.terminals[k].link_gain * (s.m - s.l) / s.sigma2);
            CHECK(std::abs(d.expected_snr_sim_db[k] - predicted) < 0.2);
        }
    }

    TEST_CASE("singleton aggregation")
    {
        auto s = small(CorrelationModel::Clerckx);
        s.n_drops = 1;
        const auto run = run_scenario(s);
        REQUIRE(run.drops.size() == 1);
        const auto &d = run.drops[0];
        CHECK(run.summary.sum_se_sim_bits.mean == d.sum_se_sim_bits);
        CHECK(run.summary.sum_se_sim_bits.p5 == d.sum_se_sim_bits);
        CHECK(run.summary.sum_se_cf_bits.median == d.sum_se_cf_bits);
        const double mean = oracle::mean(d.expected_snr_sim_db);
        CHECK(run.summary.expected_snr_sim_db.mean == doctest::Approx(mean).epsilon(1e-14));
    }

    TEST_CASE("parallel, serial and worker counts agree bit for bit")
    {
        const auto s = small(CorrelationModel::OneRing);
        const auto serial = run_scenario_serial(s);
        for (int w : {1, 2, 3, 8})
        {
            const auto par = run_scenario(s, RunOptions{w, ClosedFormVariant::DerivationConsistent});
            CHECK(par.summary == serial.summary);
            CHECK(par.drops == serial.drops);
        }
    }

    TEST_CASE("identical profiles sit below diverse ones")
    {
        auto exp = small(CorrelationModel::Exponential);
        auto clx = small(CorrelationModel::Clerckx);
        exp.n_drops = clx.n_drops = 200;
        exp.n_fading = clx.n_fading = 20;
        const auto a = run_scenario(exp).summary.expected_snr_sim_db.median;
        const auto b = run_scenario(clx).summary.expected_snr_sim_db.median;
        CHECK(a < b);
    }

    TEST_CASE("median expected SNR decreases with L")
    {
        double prev = 1e300;
        for (int l : {2, 4, 8, 12})
        {
            auto s = small(CorrelationModel::Exponential, 16, l);
            s.n_drops = 200;
            s.n_fading = 20;
            const double med = run_scenario(s).summary.expected_snr_sim_db.median;
            CHECK(med < prev);
            prev = med;
        }
    }

    TEST_CASE("rank-deficient channels abort drops and fail the run")
    {
        auto s = small(CorrelationModel::OneRing, 8, 2);
        s.model.angular_spread_deg = 1e-7;
        s.model.mean_doa_deg = 30.0;
        s.n_drops = 3;
        CHECK_THROWS_AS(run_drop(s, 0), RunFailure);
        CHECK_THROWS_AS(run_scenario(s), RunFailure);
    }

    TEST_CASE("instantaneous samples")
    {
        const auto s = small(CorrelationModel::Clerckx);
        const auto samples = collect_instantaneous_snr(s);
        CHECK(samples.size() == static_cast<std::size_t>(s.n_drops * s.n_fading * s.l));
        std::vector<double> local;
        run_drop(s, 0, ClosedFormVariant::DerivationConsistent, &local);
        CHECK(std::equal(local.begin(), local.end(), samples.begin()));
    }

    TEST_CASE("empirical cdf")
    {
        const EmpiricalCdf four({4.0, 1.0, 3.0, 2.0});
        CHECK(four.median() == 2.5);
        CHECK(four.percentile(0.0) == 1.0);
        CHECK(four.percentile(100.0) == 4.0);
        const auto pts = four.points();
        REQUIRE(pts.size() == 4);
        CHECK(pts[0].value == 1.0);
        CHECK(pts[0].probability == 0.25);
        CHECK(pts[3].probability == 1.0);

        const EmpiricalCdf flat(std::vector<double>(7, 3.25));
        for (double p : {0.0, 5.0, 50.0, 95.0, 100.0})
            CHECK(flat.percentile(p) == 3.25);

        auto rng = make_stream(5, StreamPurpose::Auxiliary, 0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> x(100000);
        for (auto &v : x)
            v = u(rng);
        CHECK(std::abs(EmpiricalCdf(x).percentile(5.0) - 0.05) < 0.005);

        CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{}), InvalidParameter);
        CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{1.0, std::nan("")}), InvalidParameter);
        CHECK_THROWS_AS(four.percentile(101.0), InvalidParameter);
    }
}
