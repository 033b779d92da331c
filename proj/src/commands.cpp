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
#include "corrdiv/calibration.hpp"
#include "corrdiv/error.hpp"
#include "corrdiv/scenario_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace corrdiv
{
    namespace fs = std::filesystem;

    namespace
    {
        RunOptions run_options(const CommandOptions &options)
        {
            return RunOptions{options.workers, options.closed_form};
        }

        Scenario load(const fs::path &path, const CommandOptions &options)
        {
            auto s = io::load_scenario(path);
            if (options.seed)
                s.seed = *options.seed;
            return s;
        }

        std::ofstream open_output(const fs::path &path)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw RunFailure("cannot write " + path.string());
            return out;
        }

        fs::path prepare_dir(const fs::path &dir)
        {
            const fs::path target = dir.empty() ? fs::current_path() : dir;
            std::error_code ec;
            fs::create_directories(target, ec);
            if (ec)
                throw RunFailure("cannot create output directory " + target.string() + ": " + ec.message());
            return target;
        }

        // Runs f and maps library errors onto exit statuses.
        template <typename F>
        int guarded(std::ostream &err, F &&f)
        {
            try
            {
                return f();
            }
            catch (const ParseError &e)
            {
                err << "error: " << e.what() << "\n";
                return kExitInvalidInput;
            }
            catch (const InvalidParameter &e)
            {
                err << "error: " << e.what() << "\n";
                return kExitInvalidInput;
            }
            catch (const IncompatibleScenarios &e)
            {
                err << "error: " << e.what() << "\n";
                return kExitInvalidInput;
            }
            catch (const std::exception &e)
            {
                err << "error: " << e.what() << "\n";
                return kExitRunFailure;
            }
        }

        std::vector<double> pooled(const RunResult &run, bool closed_form)
        {
            std::vector<double> v;
            for (const auto &d : run.drops)
            {
                const auto &src = closed_form ? d.expected_snr_cf_db : d.expected_snr_sim_db;
                v.insert(v.end(), src.begin(), src.end());
            }
            return v;
        }

        void write_diagnostics(std::ostream &out, const Scenario &resolved, const RunResult &run,
                               const std::optional<CalibrationResult> &calibration)
        {
            out << "key,value\n";
            out << "attenuation_constant," << io::format_double(resolved.geometry.attenuation_constant) << "\n";
            if (calibration)
                out << "calibration_p5_db," << io::format_double(calibration->achieved_percentile_db) << "\n";
            out << "seed," << resolved.seed << "\n";
            out << "drops_completed," << run.summary.drops_completed << "\n";
            out << "drops_aborted," << run.summary.drops_aborted << "\n";
            out << "rejected_trials," << run.summary.rejected_trials << "\n";
            out << "mean_eta_cv," << io::format_double(run.summary.mean_eta_cv) << "\n";
            for (const auto &f : run.failures)
                out << "aborted_drop," << f.drop_index << "\n";
        }

        // Calibrations already computed in this invocation, keyed by the recipe inputs.
        class CalibrationCache
        {
        public:
            Scenario resolve(const Scenario &s, const RunOptions &options)
            {
                if (!s.calibrate)
                    return s;
                for (const auto &[key, a] : entries_)
                {
                    if (key.geometry == s.geometry && key.n_drops == s.n_drops && key.n_fading == s.n_fading &&
                        key.seed == s.seed)
                    {
                        auto r = s;
                        r.geometry.attenuation_constant = a;
                        r.calibrate = false;
                        return r;
                    }
                }
                auto r = resolve_attenuation(s, options);
                entries_.emplace_back(s, r.geometry.attenuation_constant);
                return r;
            }

        private:
            std::vector<std::pair<Scenario, double>> entries_;
        };

        bool compatible(const Scenario &a, const Scenario &b)
        {
            auto ga = a.geometry, gb = b.geometry;
            // A is compared only when neither side calibrates; calibrated runs share it by construction.
            if (a.calibrate || b.calibrate)
                ga.attenuation_constant = gb.attenuation_constant = 0.0;
            return a.m == b.m && a.l == b.l && a.seed == b.seed && ga == gb;
        }
    }

    int cmd_run(const fs::path &scenario_path, const CommandOptions &options, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&] {
            const auto scenario = load(scenario_path, options);
            const auto dir = prepare_dir(options.out_dir);
            const auto ro = run_options(options);

            std::optional<CalibrationResult> calibration;
            Scenario resolved = scenario;
            if (scenario.calibrate)
            {
                CalibrationResult c;
                resolved = resolve_attenuation(scenario, ro, &c);
                calibration = c;
            }
            const auto run = run_scenario(resolved, ro);

            {
                auto f = open_output(dir / "drops.csv");
                io::write_drops_csv(f, run);
            }
            {
                auto f = open_output(dir / "summary.csv");
                io::write_summary_csv(f, run.summary);
            }
            {
                auto f = open_output(dir / "diagnostics.csv");
                write_diagnostics(f, resolved, run, calibration);
            }
            {
                auto f = open_output(dir / "manifest.yaml");
                f << io::write_scenario(resolved);
            }

            out << "drops: " << run.summary.drops_completed << " completed, " << run.summary.drops_aborted
                << " aborted\n";
            out << "median expected SNR: sim " << run.summary.expected_snr_sim_db.median << " dB, closed form "
                << run.summary.expected_snr_cf_db.median << " dB\n";
            out << "median |gap|: " << run.summary.abs_gap_db.median << " dB\n";
            out << "wrote " << dir.string() << "\n";
            return kExitOk;
        });
    }

    int cmd_compare(const std::vector<fs::path> &scenario_paths, const CommandOptions &options, std::ostream &out,
                    std::ostream &err)
    {
        return guarded(err, [&] {
            if (scenario_paths.size() < 2)
                throw InvalidParameter("compare needs at least two scenarios");

            std::vector<Scenario> scenarios;
            std::vector<std::string> names;
            std::map<std::string, int> seen;
            for (const auto &p : scenario_paths)
            {
                scenarios.push_back(load(p, options));
                auto name = p.stem().string();
                if (const int n = ++seen[name]; n > 1)
                    name += "_" + std::to_string(n);
                names.push_back(name);
            }
            for (std::size_t i = 1; i < scenarios.size(); ++i)
            {
                if (!compatible(scenarios[0], scenarios[i]))
                    throw IncompatibleScenarios(names[i] + " differs from " + names[0] +
                                                " in M, L, seed or geometry");
            }

            const auto dir = prepare_dir(options.out_dir);
            const auto ro = run_options(options);
            CalibrationCache cache;
            std::vector<RunResult> runs;
            for (const auto &s : scenarios)
                runs.push_back(run_scenario(cache.resolve(s, ro), ro));

            std::vector<EmpiricalCdf> sim, cf;
            for (const auto &r : runs)
            {
                sim.emplace_back(pooled(r, false));
                cf.emplace_back(pooled(r, true));
            }

            {
                auto f = open_output(dir / "cdf.csv");
                f << "scenario,kind,expected_snr_db,probability\n";
                for (std::size_t i = 0; i < runs.size(); ++i)
                {
                    for (const auto &[kind, cdf] : {std::pair{"sim", &sim[i]}, std::pair{"cf", &cf[i]}})
                    {
                        for (const auto &pt : cdf->points())
                            f << names[i] << ',' << kind << ',' << io::format_double(pt.value) << ','
                              << io::format_double(pt.probability) << '\n';
                    }
                }
            }
            {
                auto f = open_output(dir / "gains.csv");
                f << "baseline,candidate,median_gain_sim_db,median_gain_cf_db\n";
                for (std::size_t i = 0; i < runs.size(); ++i)
                {
                    for (std::size_t j = i + 1; j < runs.size(); ++j)
                    {
                        const double gs = sim[j].median() - sim[i].median();
                        const double gc = cf[j].median() - cf[i].median();
                        f << names[i] << ',' << names[j] << ',' << io::format_double(gs) << ','
                          << io::format_double(gc) << '\n';
                        out << names[j] << " vs " << names[i] << ": median gain " << gs << " dB (closed form "
                            << gc << " dB)\n";
                    }
                }
            }
            {
                auto f = open_output(dir / "summary.csv");
                f << "scenario,quantity,mean,median,p5,p95\n";
                for (std::size_t i = 0; i < runs.size(); ++i)
                {
                    std::ostringstream block;
                    io::write_summary_csv(block, runs[i].summary);
                    std::istringstream lines(block.str());
                    std::string line;
                    std::getline(lines, line); // header
                    while (std::getline(lines, line))
                        f << names[i] << ',' << line << '\n';
                }
            }
            out << "wrote " << dir.string() << "\n";
            return kExitOk;
        });
    }

    int cmd_calibrate(const fs::path &scenario_path, const CommandOptions &options, std::ostream &out,
                      std::ostream &err)
    {
        return guarded(err, [&] {
            const auto scenario = load(scenario_path, options);
            if (!scenario.calibrate)
                throw ParseError(scenario_path.string(), 0, "geometry.calibrate",
                                 "calibrate needs a scenario with geometry.calibrate: true");

            CalibrationResult c;
            const auto resolved = resolve_attenuation(scenario, run_options(options), &c);

            const fs::path dir = options.out_dir.empty() ? scenario_path.parent_path() : prepare_dir(options.out_dir);
            const auto target = dir / (scenario_path.stem().string() + ".calibrated.yaml");
            {
                auto f = open_output(target);
                f << io::write_scenario(resolved);
            }
            out << "attenuation_constant: " << io::format_double(c.attenuation_constant) << "\n";
            out << "achieved_p5_db: " << io::format_double(c.achieved_percentile_db) << "\n";
            out << "samples: " << c.samples << "\n";
            out << "wrote " << target.string() << "\n";
            return kExitOk;
        });
    }
}
