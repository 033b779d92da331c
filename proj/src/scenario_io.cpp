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

#include "corrdiv/scenario_io.hpp"
#include "corrdiv/error.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace corrdiv::io
{
    namespace
    {
        class Reader
        {
        public:
            explicit Reader(std::string source) : source_(std::move(source)) {}

            [[noreturn]] void fail(const YAML::Node &node, const std::string &key, const std::string &what) const
            {
                throw ParseError(source_, line_of(node), key, what);
            }

            static int line_of(const YAML::Node &node)
            {
                if (!node.IsDefined())
                    return 0;
                const auto mark = node.Mark();
                return mark.line >= 0 ? mark.line + 1 : 0;
            }

            static std::string join(const std::string &prefix, const std::string &key)
            {
                return prefix.empty() ? key : prefix + "." + key;
            }

            void require_map(const YAML::Node &node, const std::string &path) const
            {
                if (!node.IsMap())
                    fail(node, path, "expected a mapping");
            }

            // Rejects every key that is not in `allowed`.
            void check_keys(const YAML::Node &node, const std::string &path,
                            std::initializer_list<std::string_view> allowed) const
            {
                for (const auto &entry : node)
                {
                    const auto key = entry.first.as<std::string>();
                    bool known = false;
                    for (const auto a : allowed)
                        known = known || (a == key);
                    if (!known)
                        fail(entry.first, join(path, key), "unknown or inapplicable key");
                }
            }

            double read_double(const YAML::Node &node, const std::string &key) const
            {
                if (!node.IsScalar())
                    fail(node, key, "expected a number");
                try
                {
                    const double v = node.as<double>();
                    if (!std::isfinite(v))
                        fail(node, key, "must be finite");
                    return v;
                }
                catch (const YAML::BadConversion &)
                {
                    fail(node, key, "expected a number (got '" + node.Scalar() + "')");
                }
            }

            long long read_integer(const YAML::Node &node, const std::string &key) const
            {
                if (!node.IsScalar())
                    fail(node, key, "expected an integer");
                const auto &text = node.Scalar();
                long long v = 0;
                const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
                if (ec != std::errc() || ptr != text.data() + text.size())
                    fail(node, key, "expected an integer (got '" + text + "')");
                return v;
            }

            int read_int(const YAML::Node &node, const std::string &key, int min_value) const
            {
                const auto v = read_integer(node, key);
                if (v < min_value || v > std::numeric_limits<int>::max())
                    fail(node, key, "must be an integer >= " + std::to_string(min_value) + " (got " + node.Scalar() + ")");
                return static_cast<int>(v);
            }

            std::uint64_t read_u64(const YAML::Node &node, const std::string &key) const
            {
                if (!node.IsScalar())
                    fail(node, key, "expected an unsigned integer");
                const auto &text = node.Scalar();
                std::uint64_t v = 0;
                const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
                if (ec != std::errc() || ptr != text.data() + text.size())
                    fail(node, key, "expected an unsigned 64-bit integer (got '" + text + "')");
                return v;
            }

            bool read_bool(const YAML::Node &node, const std::string &key) const
            {
                if (!node.IsScalar())
                    fail(node, key, "expected true or false");
                try
                {
                    return node.as<bool>();
                }
                catch (const YAML::BadConversion &)
                {
                    fail(node, key, "expected true or false (got '" + node.Scalar() + "')");
                }
            }

            std::string read_string(const YAML::Node &node, const std::string &key) const
            {
                if (!node.IsScalar())
                    fail(node, key, "expected a string");
                return node.Scalar();
            }

            const std::string &source() const { return source_; }

        private:
            std::string source_;
        };

        CorrelationModel parse_model_type(const Reader &rd, const YAML::Node &node)
        {
            const auto name = rd.read_string(node, "model.type");
            if (name == "exponential")
                return CorrelationModel::Exponential;
            if (name == "clerckx")
                return CorrelationModel::Clerckx;
            if (name == "one_ring")
                return CorrelationModel::OneRing;
            rd.fail(node, "model.type", "expected exponential, clerckx or one_ring (got '" + name + "')");
        }

        double read_xi(const Reader &rd, const YAML::Node &model)
        {
            const auto node = model["xi"];
            if (!node)
                rd.fail(model, "model.xi", "required for this model type");
            const double xi = rd.read_double(node, "model.xi");
            if (!(xi >= 0.0 && xi <= 1.0))
                rd.fail(node, "model.xi", "must lie in [0, 1] (got " + node.Scalar() + ")");
            return xi;
        }

        void parse_model(const Reader &rd, const YAML::Node &model, Scenario &s)
        {
            rd.require_map(model, "model");
            const auto type_node = model["type"];
            if (!type_node)
                rd.fail(model, "model.type", "required");
            auto &spec = s.model;
            spec = CorrelationModelSpec{};
            spec.variant = parse_model_type(rd, type_node);

            switch (spec.variant)
            {
            case CorrelationModel::Exponential:
                rd.check_keys(model, "model", {"type", "xi"});
                spec.xi = read_xi(rd, model);
                break;
            case CorrelationModel::Clerckx:
            {
                rd.check_keys(model, "model", {"type", "xi", "phase_range_deg"});
                spec.xi = read_xi(rd, model);
                const auto range = model["phase_range_deg"];
                if (!range)
                    rd.fail(model, "model.phase_range_deg", "required for the clerckx model");
                if (!range.IsSequence() || range.size() != 2)
                    rd.fail(range, "model.phase_range_deg", "expected [low, high] in degrees");
                spec.phase_range_deg.low_deg = rd.read_double(range[0], "model.phase_range_deg");
                spec.phase_range_deg.high_deg = rd.read_double(range[1], "model.phase_range_deg");
                if (spec.phase_range_deg.low_deg > spec.phase_range_deg.high_deg)
                    rd.fail(range, "model.phase_range_deg", "low must not exceed high");
                break;
            }
            case CorrelationModel::OneRing:
            {
                rd.check_keys(model, "model", {"type", "angular_spread_deg", "mean_doa", "spacing_wavelengths", "measured"});
                const auto spread = model["angular_spread_deg"];
                if (!spread)
                    rd.fail(model, "model.angular_spread_deg", "required for the one_ring model (degrees or 'measured')");
                if (spread.IsScalar() && spread.Scalar() == "measured")
                    spec.angular_spread_deg.reset();
                else
                {
                    const double v = rd.read_double(spread, "model.angular_spread_deg");
                    if (!(v > 0.0 && v <= 180.0))
                        rd.fail(spread, "model.angular_spread_deg", "must lie in (0, 180] degrees (got " + spread.Scalar() + ")");
                    spec.angular_spread_deg = v;
                }

                const auto doa = model["mean_doa"];
                if (!doa)
                    rd.fail(model, "model.mean_doa", "required for the one_ring model (degrees or 'uniform')");
                if (doa.IsScalar() && doa.Scalar() == "uniform")
                    spec.mean_doa_deg.reset();
                else
                    spec.mean_doa_deg = rd.read_double(doa, "model.mean_doa");

                if (const auto spacing = model["spacing_wavelengths"])
                {
                    spec.element_spacing_wavelengths = rd.read_double(spacing, "model.spacing_wavelengths");
                    if (!(spec.element_spacing_wavelengths > 0.0))
                        rd.fail(spacing, "model.spacing_wavelengths", "must be positive (got " + spacing.Scalar() + ")");
                }

                if (const auto measured = model["measured"])
                {
                    rd.require_map(measured, "model.measured");
                    rd.check_keys(measured, "model.measured", {"spread_mean_deg", "spread_std_deg", "spread_floor_deg"});
                    MeasuredAngularModel mm;
                    if (const auto v = measured["spread_mean_deg"])
                        mm.spread_mean_deg = rd.read_double(v, "model.measured.spread_mean_deg");
                    if (const auto v = measured["spread_std_deg"])
                    {
                        mm.spread_std_deg = rd.read_double(v, "model.measured.spread_std_deg");
                        if (mm.spread_std_deg < 0.0)
                            rd.fail(v, "model.measured.spread_std_deg", "must be >= 0");
                    }
                    if (const auto v = measured["spread_floor_deg"])
                    {
                        mm.spread_floor_deg = rd.read_double(v, "model.measured.spread_floor_deg");
                        if (!(mm.spread_floor_deg > 0.0))
                            rd.fail(v, "model.measured.spread_floor_deg", "must be positive");
                    }
                    try
                    {
                        mm.validate();
                    }
                    catch (const InvalidParameter &e)
                    {
                        rd.fail(measured, "model.measured", e.what());
                    }
                    s.measured_model = mm;
                }
                break;
            }
            }
        }

        void parse_geometry(const Reader &rd, const YAML::Node &root, Scenario &s)
        {
            const auto geometry = root["geometry"];
            if (!geometry)
                rd.fail(root, "geometry.attenuation_constant", "required (or set geometry.calibrate: true)");
            rd.require_map(geometry, "geometry");
            rd.check_keys(geometry, "geometry",
                          {"cell_radius_m", "reference_distance_m", "alpha", "sigma_sh_db", "attenuation_constant", "calibrate"});

            auto &g = s.geometry;
            if (const auto v = geometry["cell_radius_m"])
                g.cell_radius_m = rd.read_double(v, "geometry.cell_radius_m");
            if (const auto v = geometry["reference_distance_m"])
                g.reference_distance_m = rd.read_double(v, "geometry.reference_distance_m");
            if (!(g.reference_distance_m > 0.0))
                rd.fail(geometry["reference_distance_m"], "geometry.reference_distance_m", "must be positive");
            if (!(g.reference_distance_m < g.cell_radius_m))
                rd.fail(geometry["cell_radius_m"], "geometry.cell_radius_m", "must exceed reference_distance_m");
            if (const auto v = geometry["alpha"])
            {
                g.attenuation_exponent = rd.read_double(v, "geometry.alpha");
                if (!(g.attenuation_exponent > 0.0))
                    rd.fail(v, "geometry.alpha", "must be positive (got " + v.Scalar() + ")");
            }
            if (const auto v = geometry["sigma_sh_db"])
            {
                g.shadowing_std_db = rd.read_double(v, "geometry.sigma_sh_db");
                if (g.shadowing_std_db < 0.0)
                    rd.fail(v, "geometry.sigma_sh_db", "must be >= 0 (got " + v.Scalar() + ")");
            }

            const auto calibrate = geometry["calibrate"];
            const auto constant = geometry["attenuation_constant"];
            s.calibrate = calibrate ? rd.read_bool(calibrate, "geometry.calibrate") : false;
            if (s.calibrate && constant)
                rd.fail(constant, "geometry.attenuation_constant", "conflicts with calibrate: true");
            if (!s.calibrate)
            {
                if (!constant)
                    rd.fail(geometry, "geometry.attenuation_constant", "required (or set geometry.calibrate: true)");
                g.attenuation_constant = rd.read_double(constant, "geometry.attenuation_constant");
                if (!(g.attenuation_constant > 0.0))
                    rd.fail(constant, "geometry.attenuation_constant", "must be positive (got " + constant.Scalar() + ")");
            }
        }

        void parse_run(const Reader &rd, const YAML::Node &root, Scenario &s)
        {
            const auto run = root["run"];
            if (!run)
                return;
            rd.require_map(run, "run");
            rd.check_keys(run, "run", {"n_drops", "n_fading", "seed"});
            if (const auto v = run["n_drops"])
                s.n_drops = rd.read_int(v, "run.n_drops", 1);
            if (const auto v = run["n_fading"])
                s.n_fading = rd.read_int(v, "run.n_fading", 1);
            if (const auto v = run["seed"])
                s.seed = rd.read_u64(v, "run.seed");
        }
    }

    Scenario parse_scenario(std::string_view text, const std::string &source)
    {
        Reader rd(source);
        YAML::Node root;
        try
        {
            root = YAML::Load(std::string(text));
        }
        catch (const YAML::ParserException &e)
        {
            throw ParseError(source, e.mark.line >= 0 ? e.mark.line + 1 : 0, "", e.msg);
        }
        if (!root.IsMap())
            throw ParseError(source, 0, "", "scenario document must be a mapping");

        rd.check_keys(root, "", {"m", "l", "rho_t_db", "sigma2", "model", "geometry", "run"});

        Scenario s;
        const auto m = root["m"];
        if (!m)
            rd.fail(root, "m", "required");
        s.m = rd.read_int(m, "m", 1);

        const auto l = root["l"];
        if (!l)
            rd.fail(root, "l", "required");
        s.l = rd.read_int(l, "l", 1);
        if (s.l > s.m)
            rd.fail(l, "l", "must not exceed m (got l = " + std::to_string(s.l) + ", m = " + std::to_string(s.m) + ")");

        if (const auto v = root["rho_t_db"])
            s.rho_t_db = rd.read_double(v, "rho_t_db");
        if (const auto v = root["sigma2"])
        {
            s.sigma2 = rd.read_double(v, "sigma2");
            if (!(s.sigma2 > 0.0))
                rd.fail(v, "sigma2", "must be positive (got " + v.Scalar() + ")");
        }

        const auto model = root["model"];
        if (!model)
            rd.fail(root, "model", "required");
        parse_model(rd, model, s);
        parse_geometry(rd, root, s);
        parse_run(rd, root, s);

        try
        {
            s.validate();
        }
        catch (const InvalidParameter &e)
        {
            throw ParseError(source, 0, "", e.what());
        }
        return s;
    }

    Scenario load_scenario(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError(path.string(), 0, "", "cannot open scenario file");
        std::ostringstream text;
        text << in.rdbuf();
        return parse_scenario(text.str(), path.string());
    }

    std::string format_double(double value)
    {
        char buffer[64];
        const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
        if (ec != std::errc())
            throw Error("cannot format number");
        return std::string(buffer, ptr);
    }

    std::string write_scenario(const Scenario &s)
    {
        std::ostringstream out;
        out << "m: " << s.m << "\n";
        out << "l: " << s.l << "\n";
        out << "rho_t_db: " << format_double(s.rho_t_db) << "\n";
        out << "sigma2: " << format_double(s.sigma2) << "\n";

        const auto &model = s.model;
        out << "model:\n";
        out << "  type: " << to_string(model.variant) << "\n";
        switch (model.variant)
        {
        case CorrelationModel::Exponential:
            out << "  xi: " << format_double(model.xi) << "\n";
            break;
        case CorrelationModel::Clerckx:
            out << "  xi: " << format_double(model.xi) << "\n";
            out << "  phase_range_deg: [" << format_double(model.phase_range_deg.low_deg) << ", "
                << format_double(model.phase_range_deg.high_deg) << "]\n";
            break;
        case CorrelationModel::OneRing:
            out << "  angular_spread_deg: "
                << (model.angular_spread_deg ? format_double(*model.angular_spread_deg) : std::string("measured")) << "\n";
            out << "  mean_doa: " << (model.mean_doa_deg ? format_double(*model.mean_doa_deg) : std::string("uniform"))
                << "\n";
            out << "  spacing_wavelengths: " << format_double(model.element_spacing_wavelengths) << "\n";
            if (s.measured_model)
            {
                out << "  measured:\n";
                out << "    spread_mean_deg: " << format_double(s.measured_model->spread_mean_deg) << "\n";
                out << "    spread_std_deg: " << format_double(s.measured_model->spread_std_deg) << "\n";
                out << "    spread_floor_deg: " << format_double(s.measured_model->spread_floor_deg) << "\n";
            }
            break;
        }

        const auto &g = s.geometry;
        out << "geometry:\n";
        out << "  cell_radius_m: " << format_double(g.cell_radius_m) << "\n";
        out << "  reference_distance_m: " << format_double(g.reference_distance_m) << "\n";
        out << "  alpha: " << format_double(g.attenuation_exponent) << "\n";
        out << "  sigma_sh_db: " << format_double(g.shadowing_std_db) << "\n";
        if (s.calibrate)
            out << "  calibrate: true\n";
        else
            out << "  attenuation_constant: " << format_double(g.attenuation_constant) << "\n";

        out << "run:\n";
        out << "  n_drops: " << s.n_drops << "\n";
        out << "  n_fading: " << s.n_fading << "\n";
        out << "  seed: " << s.seed << "\n";
        return out.str();
    }

    void write_drops_csv(std::ostream &out, const RunResult &run)
    {
        out << "drop,terminal,distance_m,beta_db,expected_snr_sim_db,expected_snr_cf_db,trace_sq\n";
        for (const auto &d : run.drops)
        {
            for (std::size_t k = 0; k < d.terminals.size(); ++k)
            {
                out << d.drop_index << ',' << k << ',' << format_double(d.terminals[k].distance_m) << ','
                    << format_double(to_db(d.terminals[k].link_gain)) << ',' << format_double(d.expected_snr_sim_db[k])
                    << ',' << format_double(d.expected_snr_cf_db[k]) << ',' << format_double(d.trace_sq) << '\n';
            }
        }
    }

    void write_summary_csv(std::ostream &out, const RunSummary &summary)
    {
        auto row = [&](const char *name, const DistributionSummary &d) {
            out << name << ',' << format_double(d.mean) << ',' << format_double(d.median) << ',' << format_double(d.p5)
                << ',' << format_double(d.p95) << '\n';
        };
        out << "quantity,mean,median,p5,p95\n";
        row("expected_snr_sim_db", summary.expected_snr_sim_db);
        row("expected_snr_cf_db", summary.expected_snr_cf_db);
        row("abs_gap_db", summary.abs_gap_db);
        row("sum_se_sim_bits", summary.sum_se_sim_bits);
        row("sum_se_cf_bits", summary.sum_se_cf_bits);
    }
}
