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

#include "risisac/channel.hpp"

#include <string>
#include <utility>
#include <vector>

namespace risisac
{

struct DesignState
{
    std::vector<MatC> W; // J beamformer covariances, Nt x Nt
    MatC C_z;            // AN covariance
    VecR p;              // UL powers, watts
    std::vector<VecC> r; // UL combiners
    VecC q;              // RIS phases, unit modulus
    double alpha = 0.0;

    MatC C_s() const; // C_z + sum_j W_j
    double total_power() const;
};

struct MetricsReport
{
    VecR gamma_dl;     // J
    MatR gamma_eve_dl; // L x J
    VecR gamma_ul;     // K
    MatR gamma_eve_ul; // L x K
    double sc_dl = 0.0;
    double sc_ul = 0.0;
    VecR sensing_power; // L, watts
    VecR echo_sinr;     // L
    double total_power = 0.0;
};

double sinr_dl_user(const CascadedLinks &c, const DesignState &st, int j);
double sinr_dl_eve(const CascadedLinks &c, const DesignState &st, int j, int l);

// Interference-plus-noise matrix D_k seen by the combiner of UL user k.
MatC ul_interference(const CascadedLinks &c, const DesignState &st, int k);
double sinr_ul_bs(const CascadedLinks &c, const DesignState &st, int k, const VecC &r);
double sinr_ul_bs(const CascadedLinks &c, const DesignState &st, int k);
double sinr_ul_eve(const CascadedLinks &c, const DesignState &st, int k, int l);

// Worst-case (DL, UL) secrecy capacities in bps/Hz from the SINR tables of `m`.
std::pair<double, double> secrecy_capacities(const MetricsReport &m);

// Tr[H_B(phi0) C_s] with h_B = a_R(0, phi0) diag(q) H_BR.
double beampattern(const ChannelSet &ch, const ArrayGeometry &geom, const DesignState &st, double phi0);

double sensing_power(const CascadedLinks &c, const DesignState &st, int l);

// R_l: everything but target l at the radar receiver.
MatC echo_interference(const CascadedLinks &c, const DesignState &st, int l);
VecC optimal_radar_filter(const CascadedLinks &c, const DesignState &st, int l);
double echo_sinr(const CascadedLinks &c, const DesignState &st, int l, const VecC &f);
// Same value written as rho Tr[H_BE C_s] |f^H h~_EB|^2 / (L_BRE f^H R f); RIS-only links.
double echo_sinr_factored(const CascadedLinks &c, const DesignState &st, int l, const VecC &f);

// UL combiners r_k = D_k^{-1} h_VkB.
std::vector<VecC> optimal_combiners(const CascadedLinks &c, const DesignState &st);

// All metrics. UL SINRs use st.r when present, the optimal combiners otherwise;
// echo SINRs use the optimal radar filters.
MetricsReport evaluate(const CascadedLinks &c, const DesignState &st);

// Flat (name, value) view with stable names, e.g. gamma_dl_1, gamma_eve_dl_2_1, echo_sinr_1.
std::vector<std::pair<std::string, double>> flatten(const MetricsReport &m);
std::string to_json(const MetricsReport &m);

} // namespace risisac
