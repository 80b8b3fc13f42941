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

#include "risisac/conic.hpp"
#include "risisac/metrics.hpp"

#include <string>
#include <vector>

namespace risisac
{

struct OptimizerSettings
{
    double solver_tol = 1e-7;
    int draws = 50;
    double threshold_margin = 2e-6; // relative tightening of every threshold inside the subproblems
    double audit_tol = 1e-5;        // relative slack accepted by the constraint audit
    bool refresh_combiners = true;
    bool monotone_ris_update = true;
    int sca_iters = 3;
    int ris_iters = 2;
    int ao_iters = 10;
    int feasibility_iters = 10;
};

OptimizerSettings settings_from(const ScenarioConfig &cfg);

// Relative constraint violations of problem P2 evaluated through the metrics module.
struct AuditResult
{
    bool feasible = false;
    double max_violation = 0.0; // largest relative violation, 0 when every constraint holds exactly
    double dl_user = 0.0, dl_eve = 0.0, ul_bs = 0.0, ul_eve = 0.0, power = 0.0, sensing = 0.0;
    double min_sensing = 0.0; // min_l P_s
};

AuditResult audit(const CascadedLinks &c, const DesignState &st, const SystemModel &m, double rel_tol = 1e-5);

struct SubproblemTrace
{
    int outer = 0;
    int inner = 0;
    char kind = 'W'; // 'W' beamforming/AN/power, 'Q' RIS phases
    double alpha = 0.0; // relaxed objective in watts
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<double> rank_one_ratio; // per W_j, or the single Q ratio
    double max_violation = 0.0;
    bool accepted = false;
    bool phase1 = false; // violation-minimizing pass before a feasible point is known
};

// Lowered P4 together with what is needed to map the solution back.
struct WSubproblem
{
    ConicProblem problem;
    std::vector<int> W;
    int C_z = -1;
    std::vector<int> Pi; // 2x2 epigraph blocks; p_k = power_scale[k] * Pi_k(0,0)
    int alpha = -1;
    std::vector<double> power_scale;
    double p_unit = 1.0;     // watts per unit of W, C_z
    double alpha_unit = 1.0; // watts per unit of alpha
    int slack = -1;          // relative violation variable (feasibility form only)
    bool trivially_infeasible = false;
};

// With feasibility = true the sensing objective is replaced by the minimum relative threshold violation.
WSubproblem build_subproblem_w(const CascadedLinks &c, const DesignState &anchor, const SystemModel &m,
                               double margin = 0.0, bool feasibility = false);
DesignState decode_w(const WSubproblem &w, const SolveOutcome &o, const DesignState &base);

// Convexified UL constraint lhs gamma / p_k + b_k(D_k) - 2 a_k, with a_k, b_k from the first-order
// expansion of h^H D^{-1} h at `anchor` and D_k evaluated at `st`. Feasible when <= 0.
double ul_surrogate(const CascadedLinks &c, const DesignState &anchor, const DesignState &st, int k, double gamma);

struct ScaResult
{
    DesignState state;
    bool feasible = false;
    std::vector<SubproblemTrace> trace;
    int extraction_checks = 0;
    int extraction_flags = 0;
};

ScaResult sca_loop_w(const CascadedLinks &c, const DesignState &st, const SystemModel &m,
                     const OptimizerSettings &s, int outer = 0);

// Violation-minimizing SCA; returns the iterate with the smallest audited violation.
ScaResult sca_loop_w_phase1(const CascadedLinks &c, const DesignState &st, const SystemModel &m,
                            const OptimizerSettings &s, int outer = 0);

// Principal-eigenvector extraction: w = sqrt(lambda_max) e_max, ratio = lambda_max / Tr.
std::pair<VecC, double> extract_rank_one(const MatC &W);

// w = W h^H / sqrt(h W h^H): keeps |h w|^2 = h W h^H and W - w w^H >= 0.
VecC extract_rank_one_preserving(const MatC &W, const RowC &h);

// Replaces every W_j by a rank-one matrix. Principal extraction is kept when it passes the audit,
// otherwise the SINR-preserving construction is used and the residual moves into C_z.
struct ExtractionResult
{
    DesignState state;
    std::vector<double> ratio;
    bool principal_ok = false;
    double principal_violation = 0.0;
};

ExtractionResult extract_all(const CascadedLinks &c, const DesignState &st, const SystemModel &m, double rel_tol);

struct QSubproblem
{
    ConicProblem problem;
    int Q = -1;
    int alpha = -1;
    int dim = 0;
    bool homogenized = false;
    double alpha_unit = 1.0;
    int slack = -1;
};

QSubproblem build_subproblem_q(const ChannelSet &ch, const DirectLinkSet *direct, LinkMode mode,
                               const DesignState &st, const SystemModel &m, double margin = 0.0,
                               bool feasibility = false);

struct RandomizationResult
{
    VecC q;
    bool feasible = false;
    double objective = 0.0; // min_l P_s of the chosen candidate
    double violation = 0.0;
    int index = -1;
};

RandomizationResult gaussian_randomize(const MatC &Q, int draws, const ChannelSet &ch, const DirectLinkSet *direct,
                                       LinkMode mode, const DesignState &st, const SystemModel &m, RngStream &rng,
                                       double rel_tol = 1e-5);

enum class Termination
{
    Completed,
    Infeasible,
    LaterInfeasible,
};

std::string to_string(Termination t);

struct AoResult
{
    DesignState state;
    bool feasible = false;
    Termination reason = Termination::Infeasible;
    std::vector<MetricsReport> reports; // one per outer iteration (final accepted state)
    std::vector<double> alpha_trace;    // min_l P_s after each outer iteration
    std::vector<SubproblemTrace> traces;
    int extraction_checks = 0;
    int extraction_flags = 0; // principal extraction exceeded the 10 % slack audit
    double runtime_s = 0.0;
};

// Algorithm initialization: ZF beamformers, unit UL powers jointly rescaled, C_z = 0.
DesignState initial_state(const ChannelSet &ch, const DirectLinkSet *direct, LinkMode mode, const SystemModel &m,
                          const ArrayGeometry &geom, double phi_rb);

AoResult ao_solve(const ScenarioConfig &cfg, const ChannelSet &ch, const DirectLinkSet *direct = nullptr);

// Direct-link pipeline; the RIS step is skipped for LinkMode::RisLess.
AoResult ao_solve_benchmark(const ScenarioConfig &cfg, const ChannelSet &ch, const DirectLinkSet &direct);

} // namespace risisac
