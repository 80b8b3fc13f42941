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

#include "risisac/channel.hpp"

#include <cstdio>
#include <sstream>

namespace risisac
{

RowC steering(double theta, double phi, double delta, int m, double wavelength)
{
    if (m < 1)
        throw Error("steering: array size must be >= 1");
    RowC a(m);
    const double w = -2.0 * kPi * delta * std::cos(theta) * std::sin(phi) / wavelength;
    for (int k = 0; k < m; ++k)
        a(k) = std::polar(1.0, w * double(k));
    return a;
}

RowC ris_steering(double theta, double phi, const ArrayGeometry &geom)
{
    RowC av = steering(0.0, theta, geom.spacing_ris, geom.n_ris_v, geom.wavelength);
    RowC ah = steering(theta, phi, geom.spacing_ris, geom.n_ris_h, geom.wavelength);
    RowC out(geom.n_ris());
    for (int v = 0; v < geom.n_ris_v; ++v)
        for (int h = 0; h < geom.n_ris_h; ++h)
            out(v * geom.n_ris_h + h) = av(v) * ah(h);
    return out;
}

double path_loss_cascaded(double gain_tx, double gain_rx, double d1, double d2, double delta_r)
{
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw Error("path_loss_cascaded: distances must be positive");
    const double fp = 4.0 * kPi;
    return gain_tx * gain_rx * std::pow(delta_r, 4) / (d1 * d1 * d2 * d2 * fp * fp);
}

double echo_coefficient(double d_br, double d_re, double rcs, const LinkBudget &gains, const ArrayGeometry &geom)
{
    if (!(d_br > 0.0) || !(d_re > 0.0) || !(rcs > 0.0))
        throw Error("echo_coefficient: distances and RCS must be positive");
    const double a = std::pow(geom.spacing_ris * geom.wavelength, 2) / (d_br * d_re);
    return a * a * db_to_linear(gains.gain_tx_bs) * db_to_linear(gains.gain_rx_bs) * rcs / std::pow(4.0 * kPi, 5);
}

std::uint64_t mix64(std::uint64_t x)
{
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

static std::uint64_t fnv1a(const std::string &s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RngStream::RngStream(std::uint64_t seed, const std::string &label)
    : seed_(seed), label_(label), eng_(mix64(seed + 0x9e3779b97f4a7c15ULL * (fnv1a(label) | 1ULL)))
{
}

cd RngStream::complex_normal()
{
    const double s = std::sqrt(0.5);
    double re = normal_(eng_);
    double im = normal_(eng_);
    return {s * re, s * im};
}

double RngStream::uniform(double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(eng_);
}

MatC draw_rician_matrix(const MatC &los, double k_factor, RngStream &rng)
{
    if (std::isinf(k_factor))
        return los;
    if (!(k_factor >= 0.0))
        throw Error("draw_rician_matrix: K-factor must be >= 0");
    const double a = std::sqrt(k_factor / (k_factor + 1.0));
    const double b = std::sqrt(1.0 / (k_factor + 1.0));
    MatC out(los.rows(), los.cols());
    for (Eigen::Index c = 0; c < los.cols(); ++c)
        for (Eigen::Index r = 0; r < los.rows(); ++r)
            out(r, c) = a * los(r, c) + b * rng.complex_normal();
    return out;
}

ChannelSet synthesize(const ScenarioConfig &cfg, const GeometryTables &geo, std::uint64_t seed)
{
    const SystemModel m = resolve(cfg);
    const ArrayGeometry &ag = cfg.array;
    ChannelSet ch;
    ch.Nt = m.Nt;
    ch.Nr = m.Nr;
    ch.N = m.N;
    ch.J = m.J;
    ch.K = m.K;
    ch.L = m.L;

    const RowC a_rb = ris_steering(0.0, geo.phi_rb, ag);
    const RowC a_bt = steering(0.0, geo.phi_br, m.delta_a, m.Nt, m.lambda);
    const RowC a_br = steering(0.0, geo.phi_br, m.delta_a, m.Nr, m.lambda);

    RngStream rng_br(seed, "H_BR"), rng_rb(seed, "H_RB"), rng_ru(seed, "h_RU"), rng_re(seed, "h_RE"),
        rng_vr(seed, "h_VR");

    ch.H_BR = draw_rician_matrix(a_rb.transpose() * a_bt, m.k_br, rng_br);
    ch.H_RB = draw_rician_matrix(a_br.transpose() * a_rb, m.k_br, rng_rb);

    ch.h_RU.resize(m.J, m.N);
    for (int j = 0; j < m.J; ++j)
        ch.h_RU.row(j) = draw_rician_matrix(ris_steering(0.0, geo.phi_ru[j], ag), m.k_ru, rng_ru);
    ch.H_RE.resize(m.L, m.N);
    for (int l = 0; l < m.L; ++l)
        ch.H_RE.row(l) = draw_rician_matrix(ris_steering(0.0, geo.phi_re[l], ag), m.k_re, rng_re);
    ch.H_ER = ch.H_RE.transpose();
    ch.h_VR.resize(m.N, m.K);
    for (int k = 0; k < m.K; ++k)
        ch.h_VR.col(k) = draw_rician_matrix(ris_steering(0.0, geo.phi_rv[k], ag).transpose(), m.k_vr, rng_vr);

    ch.H_BB_dl.resize(m.Nr, m.Nt);
    const double w = -2.0 * kPi * m.delta_a * std::sin(m.si_steer) / m.lambda;
    for (int r = 0; r < m.Nr; ++r)
        for (int t = 0; t < m.Nt; ++t)
            ch.H_BB_dl(r, t) = std::polar(1.0, w * double(r) * double(t));

    for (int j = 0; j < m.J; ++j)
        ch.pl_bru.push_back(path_loss_cascaded(m.g_tb, m.g_ru, geo.d_br, geo.d_ru[j], m.delta_r));
    for (int l = 0; l < m.L; ++l)
        ch.pl_bre.push_back(path_loss_cascaded(m.g_tb, m.g_re, geo.d_br, geo.d_re[l], m.delta_r));
    ch.pl_vru.resize(m.K, m.J);
    ch.pl_vre.resize(m.K, m.L);
    for (int k = 0; k < m.K; ++k)
    {
        ch.pl_vrb.push_back(path_loss_cascaded(m.g_tv, m.g_rb, geo.d_vr[k], geo.d_br, m.delta_r));
        for (int j = 0; j < m.J; ++j)
            ch.pl_vru(k, j) = path_loss_cascaded(m.g_tv, m.g_ru, geo.d_vr[k], geo.d_ru[j], m.delta_r);
        for (int l = 0; l < m.L; ++l)
            ch.pl_vre(k, l) = path_loss_cascaded(m.g_tv, m.g_re, geo.d_vr[k], geo.d_re[l], m.delta_r);
    }
    ch.pl_brb = path_loss_cascaded(m.g_tb, m.g_rb, geo.d_br, geo.d_br, m.delta_r);
    for (int l = 0; l < m.L; ++l)
        ch.rho.push_back(echo_coefficient(geo.d_br, geo.d_re[l], m.rcs[l], cfg.link, ag));

    ch.noise = m.noise;
    ch.xi_si = m.xi_si;
    ch.R_c = m.clutter * MatC::Identity(m.Nr, m.Nr);

    for (int j = 0; j < m.J; ++j)
        ch.Hbar_BU.push_back(std::sqrt(ch.pl_bru[j]) * ch.h_RU.row(j).transpose().asDiagonal() * ch.H_BR);
    for (int l = 0; l < m.L; ++l)
    {
        ch.Hbar_BE.push_back(std::sqrt(ch.pl_bre[l]) * ch.H_RE.row(l).transpose().asDiagonal() * ch.H_BR);
        ch.Hbar_EB.push_back(std::sqrt(ch.rho[l] / ch.pl_bre[l]) * ch.H_RB * ch.H_ER.col(l).asDiagonal());
    }
    ch.hbar_VU.assign(m.K, {});
    ch.hbar_VE.assign(m.K, {});
    for (int k = 0; k < m.K; ++k)
    {
        ch.Hbar_VB.push_back(std::sqrt(ch.pl_vrb[k]) * ch.H_RB * ch.h_VR.col(k).asDiagonal());
        for (int j = 0; j < m.J; ++j)
            ch.hbar_VU[k].push_back(std::sqrt(ch.pl_vru(k, j)) *
                                    ch.h_RU.row(j).transpose().cwiseProduct(ch.h_VR.col(k)));
        for (int l = 0; l < m.L; ++l)
            ch.hbar_VE[k].push_back(std::sqrt(ch.pl_vre(k, l)) *
                                    ch.H_RE.row(l).transpose().cwiseProduct(ch.h_VR.col(k)));
    }
    return ch;
}

static double free_space(double gt, double gr, double lambda, double d)
{
    if (!(d > 0.0))
        throw Error("free-space loss: distance must be positive");
    const double a = lambda / (4.0 * kPi * d);
    return gt * gr * a * a;
}

DirectLinkSet synthesize_direct_links(const ScenarioConfig &cfg, const GeometryTables &geo, std::uint64_t seed)
{
    const SystemModel m = resolve(cfg);
    DirectLinkSet d;
    d.present = true;
    RngStream rng(seed, "direct");
    const bool blocked = cfg.options.block_direct_links;
    const double kd = m.k_direct;

    for (int j = 0; j < m.J; ++j)
    {
        RowC los = steering(0.0, geo.phi_bu[j], m.delta_a, m.Nt, m.lambda);
        RowC h = std::sqrt(free_space(m.g_tb, m.g_ru, m.lambda, geo.d_bu[j])) * draw_rician_matrix(los, kd, rng);
        d.h_BU.push_back(blocked ? RowC(RowC::Zero(m.Nt)) : h);
    }
    for (int l = 0; l < m.L; ++l)
    {
        RowC los = steering(0.0, geo.phi_be[l], m.delta_a, m.Nt, m.lambda);
        RowC h = std::sqrt(free_space(m.g_tb, m.g_re, m.lambda, geo.d_be[l])) * draw_rician_matrix(los, kd, rng);
        d.h_BE.push_back(blocked ? RowC(RowC::Zero(m.Nt)) : h);
    }
    for (int k = 0; k < m.K; ++k)
    {
        VecC los = steering(0.0, geo.phi_bv[k], m.delta_a, m.Nr, m.lambda).transpose();
        VecC h = std::sqrt(free_space(m.g_tv, m.g_rb, m.lambda, geo.d_bv[k])) * draw_rician_matrix(los, kd, rng);
        d.h_VB.push_back(blocked ? VecC(VecC::Zero(m.Nr)) : h);
    }
    d.h_VU = MatC::Zero(m.K, m.J);
    d.h_VE = MatC::Zero(m.K, m.L);
    for (int k = 0; k < m.K; ++k)
    {
        for (int j = 0; j < m.J; ++j)
        {
            MatC los(1, 1);
            los(0, 0) = std::polar(1.0, -2.0 * kPi * geo.d_vu[k][j] / m.lambda);
            cd h = std::sqrt(free_space(m.g_tv, m.g_ru, m.lambda, geo.d_vu[k][j])) * draw_rician_matrix(los, kd, rng)(0, 0);
            d.h_VU(k, j) = blocked ? cd(0.0) : h;
        }
        for (int l = 0; l < m.L; ++l)
        {
            MatC los(1, 1);
            los(0, 0) = std::polar(1.0, -2.0 * kPi * geo.d_ve[k][l] / m.lambda);
            cd h = std::sqrt(free_space(m.g_tv, m.g_re, m.lambda, geo.d_ve[k][l])) * draw_rician_matrix(los, kd, rng)(0, 0);
            d.h_VE(k, l) = blocked ? cd(0.0) : h;
        }
    }
    const double fp3 = std::pow(4.0 * kPi, 3);
    for (int l = 0; l < m.L; ++l)
    {
        const double dd = geo.d_be[l];
        const double rho_d = m.g_tb * m.g_rb * m.lambda * m.lambda * m.rcs[l] / (fp3 * std::pow(dd, 4));
        RowC at = steering(0.0, geo.phi_be[l], m.delta_a, m.Nt, m.lambda);
        RowC ar = steering(0.0, geo.phi_be[l], m.delta_a, m.Nr, m.lambda);
        MatC H = std::sqrt(rho_d) * ar.transpose() * at;
        d.H_BEB.push_back(blocked ? MatC(MatC::Zero(m.Nr, m.Nt)) : H);
    }
    return d;
}

CascadedLinks cascade(const ChannelSet &ch, const VecC &q, LinkMode mode, const DirectLinkSet *direct)
{
    if (mode != LinkMode::RisOnly && (direct == nullptr || !direct->present))
        throw Error("cascade: direct-link mode requires a DirectLinkSet");
    const bool ris = mode != LinkMode::RisLess;
    const bool dir = mode != LinkMode::RisOnly;
    if (ris && q.size() != ch.N)
        throw Error("cascade: RIS phase vector has wrong length");

    CascadedLinks c;
    c.Nt = ch.Nt;
    c.Nr = ch.Nr;
    c.N = ch.N;
    c.J = ch.J;
    c.K = ch.K;
    c.L = ch.L;
    c.noise = ch.noise;
    c.xi_si = ch.xi_si;
    c.R_c = ch.R_c;
    c.rho = ch.rho;
    c.pl_bre = ch.pl_bre;
    c.factored_echo = !dir;

    c.h_BU.assign(ch.J, RowC::Zero(ch.Nt));
    c.h_BE.assign(ch.L, RowC::Zero(ch.Nt));
    c.h_VB.assign(ch.K, VecC::Zero(ch.Nr));
    c.h_VU = MatC::Zero(ch.K, ch.J);
    c.h_VE = MatC::Zero(ch.K, ch.L);
    c.H_BEB.assign(ch.L, MatC::Zero(ch.Nr, ch.Nt));
    c.echo_rx.assign(ch.L, VecC::Zero(ch.Nr));
    c.echo_tx.assign(ch.L, RowC::Zero(ch.Nt));
    c.H_BB = ch.H_BB_dl;

    if (ris)
    {
        const VecC v = q;
        for (int j = 0; j < ch.J; ++j)
            c.h_BU[j] = v.transpose() * ch.Hbar_BU[j];
        for (int l = 0; l < ch.L; ++l)
        {
            c.h_BE[l] = v.transpose() * ch.Hbar_BE[l];
            c.echo_tx[l] = ch.H_RE.row(l).cwiseProduct(v.transpose()) * ch.H_BR;
            c.echo_rx[l] = std::sqrt(ch.rho[l]) * (ch.H_RB * ch.H_ER.col(l).cwiseProduct(v));
            c.H_BEB[l] = c.echo_rx[l] * c.echo_tx[l];
        }
        for (int k = 0; k < ch.K; ++k)
        {
            c.h_VB[k] = ch.Hbar_VB[k] * v;
            for (int j = 0; j < ch.J; ++j)
                c.h_VU(k, j) = v.transpose() * ch.hbar_VU[k][j];
            for (int l = 0; l < ch.L; ++l)
                c.h_VE(k, l) = v.transpose() * ch.hbar_VE[k][l];
        }
        c.H_BB += std::sqrt(ch.pl_brb) * ch.H_RB * v.asDiagonal() * ch.H_BR;
    }
    if (dir)
    {
        for (int j = 0; j < ch.J; ++j)
            c.h_BU[j] += direct->h_BU[j];
        for (int l = 0; l < ch.L; ++l)
        {
            c.h_BE[l] += direct->h_BE[l];
            c.H_BEB[l] += direct->H_BEB[l];
        }
        for (int k = 0; k < ch.K; ++k)
            c.h_VB[k] += direct->h_VB[k];
        c.h_VU += direct->h_VU;
        c.h_VE += direct->h_VE;
    }
    return c;
}

namespace
{
void put(std::ostringstream &os, const char *name, const MatC &m)
{
    os << name << " " << m.rows() << " " << m.cols() << "\n";
    char buf[96];
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
        {
            std::snprintf(buf, sizeof(buf), "%s%.17g %.17g", c ? " " : "", m(r, c).real(), m(r, c).imag());
            os << buf;
        }
        os << "\n";
    }
}

void put(std::ostringstream &os, const char *name, const std::vector<double> &v)
{
    os << name << " " << v.size() << "\n";
    char buf[40];
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        std::snprintf(buf, sizeof(buf), "%s%.17g", i ? " " : "", v[i]);
        os << buf;
    }
    os << "\n";
}
} // namespace

std::string dump_channels(const ChannelSet &ch)
{
    std::ostringstream os;
    os << "risisac-channels 1\n";
    os << "dims " << ch.Nt << " " << ch.Nr << " " << ch.N << " " << ch.J << " " << ch.K << " " << ch.L << "\n";
    put(os, "H_BR", ch.H_BR);
    put(os, "H_RB", ch.H_RB);
    put(os, "h_RU", ch.h_RU);
    put(os, "H_RE", ch.H_RE);
    put(os, "h_VR", ch.h_VR);
    put(os, "H_BB_dl", ch.H_BB_dl);
    put(os, "pl_bru", ch.pl_bru);
    put(os, "pl_bre", ch.pl_bre);
    put(os, "pl_vrb", ch.pl_vrb);
    put(os, "rho", ch.rho);
    put(os, "pl_brb", std::vector<double>{ch.pl_brb});
    put(os, "noise", std::vector<double>{ch.noise, ch.xi_si});
    return os.str();
}

} // namespace risisac
