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

#include "risisac/scenario.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace risisac
{

// Row steering vector, entry k = exp(-i 2 pi delta k cos(theta) sin(phi) / lambda).
RowC steering(double theta, double phi, double delta, int m, double wavelength);

// Planar RIS response a(0, theta, dr, N_V) (x) a(theta, phi, dr, N_H).
RowC ris_steering(double theta, double phi, const ArrayGeometry &geom);

double path_loss_cascaded(double gain_tx, double gain_rx, double d1, double d2, double delta_r);

double echo_coefficient(double d_br, double d_re, double rcs, const LinkBudget &gains, const ArrayGeometry &geom);

// Deterministic random stream keyed by (seed, label).
class RngStream
{
  public:
    RngStream(std::uint64_t seed, const std::string &label);

    cd complex_normal(); // CN(0, 1)
    double uniform(double a, double b);
    std::uint64_t seed() const { return seed_; }
    const std::string &label() const { return label_; }
    std::mt19937_64 &engine() { return eng_; }

  private:
    std::uint64_t seed_;
    std::string label_;
    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t mix64(std::uint64_t x);

MatC draw_rician_matrix(const MatC &los, double k_factor, RngStream &rng);

// One realization of every channel object.
struct ChannelSet
{
    int Nt = 0, Nr = 0, N = 0, J = 0, K = 0, L = 0;

    MatC H_BR; // N x Nt
    MatC H_RB; // Nr x N
    MatC h_RU; // J x N (row j is h_RU_j)
    MatC H_RE; // L x N
    MatC H_ER; // N x L
    MatC h_VR; // N x K (column k is h_VkR)
    MatC H_BB_dl; // Nr x Nt

    std::vector<double> pl_bru, pl_bre, pl_vrb; // per DL user / eve / UL user
    MatR pl_vru, pl_vre;                        // K x J, K x L
    double pl_brb = 0.0;
    std::vector<double> rho;

    double noise = 0.0; // same noise power at BS, users, eves
    double xi_si = 0.0;
    MatC R_c; // Nr x Nr

    // Q-equivalent objects with path loss folded in; v = q^T.
    std::vector<MatC> Hbar_BU; // N x Nt, h_BU = v^T Hbar_BU
    std::vector<MatC> Hbar_BE; // N x Nt
    std::vector<MatC> Hbar_VB; // Nr x N, h_VkB = Hbar_VB v
    std::vector<std::vector<VecC>> hbar_VU; // [k][j], h_VkUj = v^T hbar
    std::vector<std::vector<VecC>> hbar_VE; // [k][l]
    std::vector<MatC> Hbar_EB; // Nr x N, sqrt(rho_l / L_BRE_l) H_RB diag(H_ER[:, l])
};

// Channels present without the RIS (benchmark and direct-link modes).
struct DirectLinkSet
{
    bool present = false;
    std::vector<RowC> h_BU; // 1 x Nt
    std::vector<RowC> h_BE; // 1 x Nt
    std::vector<VecC> h_VB; // Nr x 1
    MatC h_VU;              // K x J scalars
    MatC h_VE;              // K x L
    std::vector<MatC> H_BEB; // Nr x Nt direct round-trip echo per eve
};

ChannelSet synthesize(const ScenarioConfig &cfg, const GeometryTables &geo, std::uint64_t seed);
DirectLinkSet synthesize_direct_links(const ScenarioConfig &cfg, const GeometryTables &geo, std::uint64_t seed);

// Effective end-to-end links for a given RIS phase vector.
struct CascadedLinks
{
    int Nt = 0, Nr = 0, N = 0, J = 0, K = 0, L = 0;
    std::vector<RowC> h_BU, h_BE; // 1 x Nt
    std::vector<VecC> h_VB;       // Nr x 1
    MatC h_VU, h_VE;              // K x J, K x L
    std::vector<MatC> H_BEB;      // Nr x Nt per eve
    MatC H_BB;                    // Nr x Nt
    // RIS echo factors (RIS-only mode): H_BEB_l = echo_rx_l * echo_tx_l.
    std::vector<VecC> echo_rx;    // sqrt(rho_l) * h~_ElB
    std::vector<RowC> echo_tx;    // h~_BEl, no path loss
    std::vector<double> rho, pl_bre;
    bool factored_echo = false;
    double noise = 0.0;
    double xi_si = 0.0;
    MatC R_c;
};

CascadedLinks cascade(const ChannelSet &ch, const VecC &q, LinkMode mode = LinkMode::RisOnly,
                      const DirectLinkSet *direct = nullptr);

// Textual dump of a channel realization (versioned).
std::string dump_channels(const ChannelSet &ch);

} // namespace risisac
