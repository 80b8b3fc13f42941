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

#include "risisac/types.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace risisac
{

struct ArrayGeometry
{
    int n_tx = 8;
    int n_rx = 8;
    int n_ris_h = 5;
    int n_ris_v = 5;
    double spacing_bs = 0.0425;  // meters
    double spacing_ris = 0.0425; // meters
    double wavelength = 0.085;   // meters

    int n_ris() const { return n_ris_h * n_ris_v; }
};

struct PolarNode
{
    double distance = 0.0; // meters from the BS
    double azimuth = 0.0;  // degrees, global frame
};

struct EveNode
{
    double distance = 0.0;
    double azimuth = 0.0;
    double rcs = 1.0; // m^2
};

struct RisPlacement
{
    double distance_from_bs = 22.0;
    double azimuth_from_bs = -40.0;
    double broadside_deg = 90.0; // global azimuth of the RIS normal
};

struct NodeLayout
{
    std::array<double, 2> bs_position{0.0, 0.0};
    RisPlacement ris;
    std::vector<PolarNode> dl_users;
    std::vector<PolarNode> ul_users;
    std::vector<EveNode> eves;
};

// Rician K-factors in dB; +inf means pure LoS.
struct RicianFactors
{
    double bs_ris = 20.0;   // H_BR and H_RB
    double ris_user = 20.0; // h_RU
    double ul_ris = 20.0;   // h_VR
    double ris_eve = std::numeric_limits<double>::infinity();
    double direct = 20.0; // direct links (benchmark mode only)
};

struct NoiseModel
{
    double noise_figure = 5.0; // dB
    double bandwidth = 50e6;   // Hz
    double temperature = 298.0; // K
};

struct SelfInterference
{
    double residual_db = -110.0;
    double si_steer_angle = 0.0; // degrees
};

struct LinkBudget
{
    double gain_tx_bs = 25.0;   // dBi
    double gain_rx_bs = 25.0;   // dBi
    double gain_rx_user = 12.0; // dBi
    double gain_rx_eve = 12.0;  // dBi
    double gain_tx_ul = 17.0;   // dBi
    RicianFactors rician_k;
    NoiseModel noise;
    SelfInterference self_interference;
    double clutter_power = 0.0; // W
};

struct Thresholds
{
    double gamma_dl_min = 10.0;    // dB
    double gamma_ul_min = 5.0;     // dB
    double gamma_eve_dl_max = 5.0; // dB
    double gamma_eve_ul_max = 5.0; // dB
    double p_max_dbm = 25.0;       // dBm
};

struct Budgets
{
    int ao_iters = 10;
    int sca_iters = 3;
    int ris_iters = 2;
    int feasibility_iters = 10; // violation-minimizing rounds allowed before the first feasible point
    int randomization_draws = 50;
    double solver_tol = 1e-7;
    std::uint64_t seed = 1;
};

enum class LinkMode
{
    RisOnly,    // all links through the RIS
    RisLess,    // direct links only, RIS absent
    WithDirect, // direct links plus the RIS
};

struct Options
{
    bool refresh_combiners = true;
    bool monotone_ris_update = true;
    LinkMode link_mode = LinkMode::RisOnly;
    // Direct links that are physically blocked; only meaningful for RisLess / WithDirect.
    bool block_direct_links = false;
};

struct ScenarioConfig
{
    ArrayGeometry array;
    NodeLayout layout;
    LinkBudget link;
    Thresholds thresholds;
    Budgets budgets;
    Options options;

    int J() const { return static_cast<int>(layout.dl_users.size()); }
    int K() const { return static_cast<int>(layout.ul_users.size()); }
    int L() const { return static_cast<int>(layout.eves.size()); }
    int N() const { return array.n_ris(); }
};

// Cartesian positions and the derived distances/angles.
struct GeometryTables
{
    Eigen::Vector2d bs;
    Eigen::Vector2d ris;
    std::vector<Eigen::Vector2d> dl_users, ul_users, eves;

    double d_br = 0.0;
    std::vector<double> d_ru, d_re, d_vr; // RIS to node
    std::vector<double> d_bu, d_be, d_bv; // BS to node
    std::vector<std::vector<double>> d_vu, d_ve; // UL user to DL user / eve

    // Azimuths seen from the RIS broadside, radians.
    double phi_rb = 0.0;
    std::vector<double> phi_ru, phi_re, phi_rv;

    // Azimuths seen from the BS array broadside, radians.
    double phi_br = 0.0;
    std::vector<double> phi_bu, phi_be, phi_bv;
};

ScenarioConfig default_scenario();

// n azimuths equally spaced on [a, b]; n = 1 yields the midpoint.
std::vector<double> equidistant_azimuths(int n, double a, double b);

// Throws ConfigError naming the first offending key.
void validate(const ScenarioConfig &cfg);

GeometryTables derive_geometry(const ScenarioConfig &cfg);

double noise_power(const LinkBudget &budget);

// Linear-scale view of a configuration, resolved once.
struct SystemModel
{
    int Nt = 0, Nr = 0, N = 0, J = 0, K = 0, L = 0;
    double lambda = 0.0, delta_a = 0.0, delta_r = 0.0;
    double g_tb = 0.0, g_rb = 0.0, g_ru = 0.0, g_re = 0.0, g_tv = 0.0;
    double k_br = 0.0, k_ru = 0.0, k_vr = 0.0, k_re = 0.0, k_direct = 0.0; // linear, may be +inf
    double noise = 0.0;
    double xi_si = 0.0;
    double si_steer = 0.0; // radians
    double clutter = 0.0;
    double gamma_dl = 0.0, gamma_ul = 0.0, gamma_eve_dl = 0.0, gamma_eve_ul = 0.0;
    double p_max = 0.0; // watts
    std::vector<double> rcs;
};

SystemModel resolve(const ScenarioConfig &cfg);

// File I/O (YAML). Unknown keys are errors.
ScenarioConfig load_scenario(const std::string &path);
ScenarioConfig parse_scenario(const std::string &text);
std::string dump_scenario(const ScenarioConfig &cfg);

std::string to_string(LinkMode m);
LinkMode link_mode_from_string(const std::string &s);

} // namespace risisac
