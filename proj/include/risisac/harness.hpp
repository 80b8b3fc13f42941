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

#pragma once

#include "risisac/optimizer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace risisac
{

enum class ExperimentKind
{
    Convergence,
    ScSweep,
    Beampattern,
    EchoVsThreshold,
    EchoVsK,
    FeasibilityRate,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string &s);

// Sweep parameters: none, gamma_dl_min_db, gamma_ul_min_db, gamma_eve_dl_max_db, gamma_eve_ul_max_db,
// p_max_dbm, ul_count, dl_count, eve_count, rician_k_db, n_antennas.
struct Sweep
{
    std::string parameter = "none";
    std::vector<double> values{0.0};
};

struct AngleGrid
{
    double min_deg = -90.0;
    double max_deg = 90.0;
    double step_deg = 0.5;
    std::vector<double> points() const;
};

struct ExperimentSpec
{
    std::string name = "experiment";
    ExperimentKind kind = ExperimentKind::Convergence;
    Sweep sweep;
    int trials = 10;
    std::uint64_t seed = 1;
    bool common_channels = false; // reuse the trial channels across sweep points
    std::vector<LinkMode> modes;  // FeasibilityRate: modes compared per sweep point
    AngleGrid grid;
    int workers = 0; // 0: hardware concurrency
    ScenarioConfig base;
    std::string output_dir; // empty: nothing written
};

ExperimentSpec load_experiment(const std::string &path);
ExperimentSpec parse_experiment(const std::string &text);

// Overrides one configuration field; throws ConfigError for unknown names or invalid values.
void apply_sweep_value(ScenarioConfig &cfg, const std::string &parameter, double value);

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint32_t sweep_index, std::uint32_t trial_index);

struct TrialResult
{
    int sweep_index = 0;
    double sweep_value = 0.0;
    LinkMode mode = LinkMode::RisOnly;
    int trial = 0;
    std::uint64_t seed = 0;
    bool crashed = false;
    std::string error;
    bool feasible = false;
    std::string reason;
    double runtime_s = 0.0;
    double max_violation = 0.0;
    int extraction_checks = 0;
    int extraction_flags = 0;
    std::vector<double> alpha_trace;
    MetricsReport report;
    DesignState state;
    std::vector<double> beampattern_w; // on ExperimentSpec::grid, Beampattern kind only
};

struct AggregateRow
{
    int sweep_index = 0;
    double sweep_value = 0.0;
    LinkMode mode = LinkMode::RisOnly;
    std::string metric;
    int count = 0;
    double mean = 0.0, min = 0.0, max = 0.0, std = 0.0;
};

struct ExperimentResult
{
    std::vector<TrialResult> trials; // ordered by (sweep_index, mode, trial)
    std::vector<AggregateRow> aggregate;
    std::string config_hash;
};

TrialResult run_trial(const ExperimentSpec &spec, int sweep_index, LinkMode mode, int trial);

ExperimentResult run_experiment(const ExperimentSpec &spec);

// Metrics of feasible trials; the rows "feasible" and "runtime_s" cover every trial.
std::vector<AggregateRow> aggregate(const std::vector<TrialResult> &trials);

std::string config_hash(const ExperimentSpec &spec);
std::string code_version();

std::string trial_to_json(const TrialResult &t, const ExperimentSpec &spec);
DesignState design_from_json(const std::string &text, std::uint64_t *seed = nullptr);

void write_outputs(const ExperimentSpec &spec, const ExperimentResult &r);

} // namespace risisac
