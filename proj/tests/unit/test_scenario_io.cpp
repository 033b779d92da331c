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
#include "corrdiv/scenario_io.hpp"

#include <doctest.h>

#include <string>

using namespace corrdiv;

namespace
{
    const char *kClerckx = R"(m: 64
l: 6
rho_t_db: 5
model:
  type: clerckx
  xi: 0.9
  phase_range_deg: [0, 28]
geometry:
  cell_radius_m: 500
  reference_distance_m: 50
  alpha: 3.67
  sigma_sh_db: 6
  attenuation_constant: 1.5e5
run: {n_drops: 200, n_fading: 500, seed: 18446744073709551615}
)";

    const char *kOneRing = R"(m: 8
l: 2
model:
  type: one_ring
  angular_spread_deg: measured
  mean_doa: uniform
  measured: {spread_mean_deg: 20, spread_std_deg: 3.5, spread_floor_deg: 2}
geometry:
  calibrate: true
)";

    ParseError parse_error(const std::string &text)
    {
        try
        {
            io::parse_scenario(text, "t.yaml");
        }
        catch (const ParseError &e)
        {
            return e;
        }
        FAIL("expected a parse error");
        return ParseError("", 0, "", "");
    }

    std::string replace(std::string text, const std::string &from, const std::string &to)
    {
        const auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        return text.replace(pos, from.size(), to);
    }
}

TEST_SUITE("scenario_io")
{
    TEST_CASE("parse a full clerckx scenario")
    {
        const auto s = io::parse_scenario(kClerckx);
        CHECK(s.m == 64);
        CHECK(s.l == 6);
        CHECK(s.rho_t_db == 5.0);
        CHECK(s.sigma2 == 1.0);
        CHECK(s.model.variant == CorrelationModel::Clerckx);
        CHECK(s.model.phase_range_deg == PhaseRange{0.0, 28.0});
        CHECK(s.geometry.attenuation_constant == 1.5e5);
        CHECK(!s.calibrate);
        CHECK(s.seed == 18446744073709551615ull);
    }

    TEST_CASE("parse one-ring with measured distribution")
    {
        const auto s = io::parse_scenario(kOneRing);
        CHECK(!s.model.angular_spread_deg);
        CHECK(!s.model.mean_doa_deg);
        REQUIRE(s.measured_model);
        CHECK(s.measured_model->spread_mean_deg == 20.0);
        CHECK(s.measured_model->spread_floor_deg == 2.0);
        CHECK(s.calibrate);
        CHECK(s.n_drops == 200);
        CHECK(s.seed == 1);
    }

    TEST_CASE("round trip")
    {
        for (const char *text : {kClerckx, kOneRing})
        {
            const auto s = io::parse_scenario(text);
            CHECK(io::parse_scenario(io::write_scenario(s)) == s);
        }
        Scenario s;
        s.model.variant = CorrelationModel::OneRing;
        s.model.angular_spread_deg = 0.1 + 0.2;
        s.model.mean_doa_deg = -1.0 / 3.0;
        s.model.element_spacing_wavelengths = 0.37;
        s.rho_t_db = 1e-17;
        s.sigma2 = 3.0e-12;
        s.geometry.attenuation_constant = 123456789.123456789;
        s.seed = 0;
        CHECK(io::parse_scenario(io::write_scenario(s)) == s);
        s.model = {};
        s.model.xi = 0.123456789;
        CHECK(io::parse_scenario(io::write_scenario(s)) == s);
    }

    TEST_CASE("diagnostics name the line and key")
    {
        auto e = parse_error(replace(kClerckx, "xi: 0.9", "xi: 1.5"));
        CHECK(e.line() == 6);
        CHECK(e.key() == "model.xi");
        CHECK(std::string(e.what()).find("t.yaml:6: model.xi") == 0);

        e = parse_error(replace(kClerckx, "alpha: 3.67", "alpha: 3.67\n  beta: 2"));
        CHECK(e.key() == "geometry.beta");
        CHECK(e.line() == 12);

        // keys that belong to another model type
        e = parse_error(replace(kClerckx, "xi: 0.9", "xi: 0.9\n  angular_spread_deg: 10"));
        CHECK(e.key() == "model.angular_spread_deg");

        e = parse_error(replace(kClerckx, "  attenuation_constant: 1.5e5\n", ""));
        CHECK(e.key() == "geometry.attenuation_constant");

        e = parse_error(replace(kClerckx, "  attenuation_constant: 1.5e5\n", "  attenuation_constant: 1.5e5\n  calibrate: true\n"));
        CHECK(e.key() == "geometry.attenuation_constant");

        CHECK(parse_error(replace(kClerckx, "l: 6", "l: 65")).key() == "l");
        CHECK(parse_error(replace(kClerckx, "m: 64", "m: 6.5")).key() == "m");
        CHECK(parse_error(replace(kClerckx, "seed: 18446744073709551615", "seed: -1")).key() == "run.seed");
        CHECK(parse_error(replace(kClerckx, "n_drops: 200", "n_drops: 0")).key() == "run.n_drops");
        CHECK(parse_error(replace(kClerckx, "[0, 28]", "[28, 0]")).key() == "model.phase_range_deg");
        CHECK(parse_error(replace(kClerckx, "type: clerckx", "type: kronecker")).key() == "model.type");
        CHECK(parse_error(replace(kClerckx, "sigma_sh_db: 6", "sigma_sh_db: -6")).key() == "geometry.sigma_sh_db");
        CHECK(parse_error(replace(kClerckx, "reference_distance_m: 50", "reference_distance_m: 800")).key() ==
              "geometry.cell_radius_m");
        CHECK(parse_error(replace(kOneRing, "measured\n", "190\n")).key() == "model.angular_spread_deg");
        CHECK(parse_error(replace(kOneRing, "spread_floor_deg: 2", "spread_floor_deg: 0")).key() ==
              "model.measured.spread_floor_deg");
        CHECK(parse_error(replace(kClerckx, "m: 64", "mm: 64")).key() == "mm");
        CHECK(parse_error("m: [1, 2\n").line() >= 1);
        CHECK(parse_error("- 1\n- 2\n").line() == 0);
    }

    TEST_CASE("format_double is shortest round-trip")
    {
        CHECK(io::format_double(0.1) == "0.1");
        CHECK(io::format_double(3.0) == "3");
        CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
    }
}
