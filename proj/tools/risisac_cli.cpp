// SPDX-License-Identifier: Apache-2.0
//
// risisac - secure full-duplex RIS-assisted ISAC simulation and optimization
// Copyright (C) 2026 The risisac authors
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

#include "risisac/harness.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

using namespace risisac;

namespace
{

int run_command(const std::string &spec_path, const CLI::App &cmd, std::uint64_t seed, int trials,
                const std::string &out, double solver_tol, int draws, const std::string &benchmark)
{
    ExperimentSpec spec = load_experiment(spec_path);
    if (cmd.count("--seed"))
        spec.seed = seed;
    if (cmd.count("--trials"))
    {
        if (trials < 1)
            throw ConfigError("trials", "trials must be at least 1");
        spec.trials = trials;
    }
    if (cmd.count("--out"))
        spec.output_dir = out;
    if (cmd.count("--solver-tol"))
        spec.base.budgets.solver_tol = solver_tol;
    if (cmd.count("--draws"))
        spec.base.budgets.randomization_draws = draws;
    if (cmd.count("--benchmark-mode"))
        spec.modes = {link_mode_from_string(benchmark)};
    validate(spec.base);
    if (spec.output_dir.empty())
        spec.output_dir = spec.name;

    const ExperimentResult r = run_experiment(spec);
    int feasible = 0, crashed = 0;
    for (const auto &t : r.trials)
    {
        feasible += t.feasible ? 1 : 0;
        crashed += t.crashed ? 1 : 0;
    }
    std::printf("%s: %zu trials, %d feasible, %d failed; results in %s\n", spec.name.c_str(), r.trials.size(),
                feasible, crashed, spec.output_dir.c_str());
    return crashed == int(r.trials.size()) ? 2 : 0;
}

int beampattern_command(const std::string &scenario_path, const std::string &design_path, const std::string &out,
                        const AngleGrid &grid)
{
    const ScenarioConfig cfg = load_scenario(scenario_path);
    std::ifstream in(design_path);
    if (!in)
        throw ConfigError("design", "cannot open design file '" + design_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::uint64_t seed = cfg.budgets.seed;
    const DesignState st = design_from_json(ss.str(), &seed);
    if (st.q.size() != cfg.N())
        throw ConfigError("design", "design has no RIS phases matching the scenario");
    const ChannelSet ch = synthesize(cfg, derive_geometry(cfg), seed);
    std::ostringstream os;
    os << "phi_deg,P_B_dBm\n";
    for (double phi : grid.points())
    {
        const double p = beampattern(ch, cfg.array, st, deg_to_rad(phi));
        char line[64];
        std::snprintf(line, sizeof line, "%.10g,%.10g\n", phi, p > 0.0 ? linear_to_db(p) + 30.0 : -std::numeric_limits<double>::infinity());
        os << line;
    }
    if (out.empty())
        std::cout << os.str();
    else
        std::ofstream(out) << os.str();
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Secure full-duplex RIS-assisted ISAC simulation and optimization"};
    app.require_subcommand(1);

    std::string spec_path, scenario_path, design_path, out, benchmark;
    std::uint64_t seed = 1;
    int trials = 10, draws = 50;
    double solver_tol = 1e-7;
    AngleGrid grid;

    CLI::App *run = app.add_subcommand("run", "Run an experiment file");
    run->add_option("spec", spec_path, "Experiment file")->required();
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--trials", trials, "Trials per sweep point");
    run->add_option("--out", out, "Output directory");
    run->add_option("--solver-tol", solver_tol, "Conic solver tolerance");
    run->add_option("--draws", draws, "Gaussian randomization draws")->check(CLI::PositiveNumber);
    run->add_option("--benchmark-mode", benchmark, "Run only this link mode")
        ->check(CLI::IsMember({"ris-less", "with-direct"}));

    CLI::App *bp = app.add_subcommand("beampattern", "Evaluate the RIS beampattern of a saved design");
    bp->add_option("scenario", scenario_path, "Scenario file")->required();
    bp->add_option("--design", design_path, "Trial JSON holding the design")->required();
    bp->add_option("--out", out, "CSV output file (default: stdout)");
    bp->add_option("--min-deg", grid.min_deg, "Grid start");
    bp->add_option("--max-deg", grid.max_deg, "Grid end");
    bp->add_option("--step-deg", grid.step_deg, "Grid step");

    CLI::App *val = app.add_subcommand("validate", "Check a scenario file");
    val->add_option("scenario", scenario_path, "Scenario file")->required();

    CLI::App *defaults = app.add_subcommand("show-defaults", "Print the default scenario");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try
    {
        if (*run)
            return run_command(spec_path, *run, seed, trials, out, solver_tol, draws, benchmark);
        if (*bp)
            return beampattern_command(scenario_path, design_path, out, grid);
        if (*val)
        {
            const ScenarioConfig cfg = load_scenario(scenario_path);
            derive_geometry(cfg);
            std::printf("ok: N=%d, N_t=%d, N_r=%d, J=%d, K=%d, L=%d\n", cfg.N(), cfg.array.n_tx, cfg.array.n_rx,
                        cfg.J(), cfg.K(), cfg.L());
            return 0;
        }
        if (*defaults)
        {
            const ScenarioConfig cfg = default_scenario();
            std::printf("# N=%d (%dx%d), N_t=%d, N_r=%d, J=%d, K=%d, L=%d\n", cfg.N(), cfg.array.n_ris_h,
                        cfg.array.n_ris_v, cfg.array.n_tx, cfg.array.n_rx, cfg.J(), cfg.K(), cfg.L());
            std::cout << dump_scenario(cfg);
            return 0;
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    catch (const DegenerateGeometry &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
