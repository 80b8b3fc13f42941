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

#include "risisac/metrics.hpp"

#include "json.hpp"

#include <Eigen/Eigenvalues>

namespace risisac
{

MatC DesignState::C_s() const
{
    MatC cs = C_z;
    for (const auto &w : W)
        cs += w;
    return cs;
}

double DesignState::total_power() const
{
    return C_s().trace().real() + p.sum();
}

namespace
{
// h C h^H for a row vector h.
double quad(const RowC &h, const MatC &C)
{
    return std::max(0.0, (h * C * h.adjoint())(0, 0).real());
}

MatC total_echo(const CascadedLinks &c)
{
    MatC H = MatC::Zero(c.Nr, c.Nt);
    for (const auto &h : c.H_BEB)
        H += h;
    return H;
}
} // namespace

double sinr_dl_user(const CascadedLinks &c, const DesignState &st, int j)
{
    const RowC &h = c.h_BU[j];
    double num = quad(h, st.W[j]);
    double den = quad(h, st.C_z) + c.noise;
    for (int jj = 0; jj < c.J; ++jj)
        if (jj != j)
            den += quad(h, st.W[jj]);
    for (int k = 0; k < c.K; ++k)
        den += st.p(k) * std::norm(c.h_VU(k, j));
    return num / den;
}

double sinr_dl_eve(const CascadedLinks &c, const DesignState &st, int j, int l)
{
    const RowC &h = c.h_BE[l];
    double num = quad(h, st.W[j]);
    double den = quad(h, st.C_z) + c.noise;
    for (int jj = 0; jj < c.J; ++jj)
        if (jj != j)
            den += quad(h, st.W[jj]);
    for (int k = 0; k < c.K; ++k)
        den += st.p(k) * std::norm(c.h_VE(k, l));
    return num / den;
}

MatC ul_interference(const CascadedLinks &c, const DesignState &st, int k)
{
    const MatC Cs = st.C_s();
    const MatC Hbeb = total_echo(c);
    MatC D = Hbeb * Cs * Hbeb.adjoint() + c.xi_si * c.H_BB * Cs * c.H_BB.adjoint() + c.R_c;
    D.diagonal().array() += c.noise;
    for (int kk = 0; kk < c.K; ++kk)
        if (kk != k)
            D += st.p(kk) * c.h_VB[kk] * c.h_VB[kk].adjoint();
    return 0.5 * (D + D.adjoint());
}

double sinr_ul_bs(const CascadedLinks &c, const DesignState &st, int k, const VecC &r)
{
    if (r.size() != c.Nr || r.squaredNorm() == 0.0)
        throw Error("sinr_ul_bs: combiner must be a nonzero vector of length N_r");
    const MatC D = ul_interference(c, st, k);
    double num = st.p(k) * std::norm(r.dot(c.h_VB[k]));
    double den = r.dot(D * r).real();
    return num / den;
}

double sinr_ul_bs(const CascadedLinks &c, const DesignState &st, int k)
{
    return sinr_ul_bs(c, st, k, st.r.at(k));
}

double sinr_ul_eve(const CascadedLinks &c, const DesignState &st, int k, int l)
{
    double num = st.p(k) * std::norm(c.h_VE(k, l));
    double den = quad(c.h_BE[l], st.C_s()) + c.noise;
    for (int kk = 0; kk < c.K; ++kk)
        if (kk != k)
            den += st.p(kk) * std::norm(c.h_VE(kk, l));
    return num / den;
}

std::pair<double, double> secrecy_capacities(const MetricsReport &m)
{
    auto worst = [](const VecR &legit, const MatR &eve)
    {
        double sc = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < legit.size(); ++i)
            for (Eigen::Index l = 0; l < eve.rows(); ++l)
            {
                double d = std::log2(1.0 + legit(i)) - std::log2(1.0 + eve(l, i));
                sc = std::min(sc, std::max(0.0, d));
            }
        return std::isinf(sc) ? 0.0 : sc;
    };
    return {worst(m.gamma_dl, m.gamma_eve_dl), worst(m.gamma_ul, m.gamma_eve_ul)};
}

double beampattern(const ChannelSet &ch, const ArrayGeometry &geom, const DesignState &st, double phi0)
{
    RowC a = ris_steering(0.0, phi0, geom);
    RowC h = a.cwiseProduct(st.q.transpose()) * ch.H_BR;
    return quad(h, st.C_s());
}

double sensing_power(const CascadedLinks &c, const DesignState &st, int l)
{
    return quad(c.h_BE[l], st.C_s());
}

MatC echo_interference(const CascadedLinks &c, const DesignState &st, int l)
{
    const MatC Cs = st.C_s();
    MatC R = c.xi_si * c.H_BB * Cs * c.H_BB.adjoint() + c.R_c;
    R.diagonal().array() += c.noise;
    for (int k = 0; k < c.K; ++k)
        R += st.p(k) * c.h_VB[k] * c.h_VB[k].adjoint();
    for (int m = 0; m < c.L; ++m)
        if (m != l)
            R += c.H_BEB[m] * Cs * c.H_BEB[m].adjoint();
    return 0.5 * (R + R.adjoint());
}

VecC optimal_radar_filter(const CascadedLinks &c, const DesignState &st, int l)
{
    const MatC R = echo_interference(c, st, l);
    const MatC A = c.H_BEB[l] * st.C_s() * c.H_BEB[l].adjoint();
    Eigen::LLT<MatC> llt(R);
    if (llt.info() != Eigen::Success)
        throw Error("optimal_radar_filter: interference matrix is not positive definite");
    MatC Li = llt.matrixL().solve(MatC::Identity(c.Nr, c.Nr));
    MatC M = Li * A * Li.adjoint();
    Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (M + M.adjoint()));
    VecC u = es.eigenvectors().col(c.Nr - 1);
    VecC f = Li.adjoint() * u;
    return f / f.norm();
}

double echo_sinr(const CascadedLinks &c, const DesignState &st, int l, const VecC &f)
{
    if (f.size() != c.Nr || f.squaredNorm() == 0.0)
        throw Error("echo_sinr: filter must be a nonzero vector of length N_r");
    const MatC R = echo_interference(c, st, l);
    VecC g = c.H_BEB[l].adjoint() * f;
    double num = std::max(0.0, g.dot(st.C_s() * g).real());
    return num / f.dot(R * f).real();
}

double echo_sinr_factored(const CascadedLinks &c, const DesignState &st, int l, const VecC &f)
{
    if (!c.factored_echo)
        throw Error("echo_sinr_factored: only defined for RIS-only links");
    if (f.size() != c.Nr || f.squaredNorm() == 0.0)
        throw Error("echo_sinr_factored: filter must be a nonzero vector of length N_r");
    const MatC R = echo_interference(c, st, l);
    VecC h_eb = c.echo_rx[l] / std::sqrt(c.rho[l]);
    double ps = sensing_power(c, st, l);
    return c.rho[l] * ps * std::norm(f.dot(h_eb)) / (c.pl_bre[l] * f.dot(R * f).real());
}

std::vector<VecC> optimal_combiners(const CascadedLinks &c, const DesignState &st)
{
    std::vector<VecC> r;
    for (int k = 0; k < c.K; ++k)
    {
        if (c.h_VB[k].squaredNorm() == 0.0)
        {
            r.push_back(VecC::Unit(c.Nr, 0));
            continue;
        }
        MatC D = ul_interference(c, st, k);
        Eigen::LLT<MatC> llt(D);
        if (llt.info() != Eigen::Success)
            throw Error("optimal_combiners: D_k is singular");
        r.push_back(llt.solve(c.h_VB[k]));
    }
    return r;
}

MetricsReport evaluate(const CascadedLinks &c, const DesignState &st)
{
    MetricsReport m;
    m.gamma_dl.resize(c.J);
    m.gamma_eve_dl.resize(c.L, c.J);
    m.gamma_ul.resize(c.K);
    m.gamma_eve_ul.resize(c.L, c.K);
    m.sensing_power.resize(c.L);
    m.echo_sinr.resize(c.L);
    for (int j = 0; j < c.J; ++j)
    {
        m.gamma_dl(j) = sinr_dl_user(c, st, j);
        for (int l = 0; l < c.L; ++l)
            m.gamma_eve_dl(l, j) = sinr_dl_eve(c, st, j, l);
    }
    const std::vector<VecC> r = int(st.r.size()) == c.K ? st.r : optimal_combiners(c, st);
    for (int k = 0; k < c.K; ++k)
    {
        m.gamma_ul(k) = sinr_ul_bs(c, st, k, r[k]);
        for (int l = 0; l < c.L; ++l)
            m.gamma_eve_ul(l, k) = sinr_ul_eve(c, st, k, l);
    }
    for (int l = 0; l < c.L; ++l)
    {
        m.sensing_power(l) = sensing_power(c, st, l);
        m.echo_sinr(l) = echo_sinr(c, st, l, optimal_radar_filter(c, st, l));
    }
    auto sc = secrecy_capacities(m);
    m.sc_dl = sc.first;
    m.sc_ul = sc.second;
    m.total_power = st.total_power();
    return m;
}

std::vector<std::pair<std::string, double>> flatten(const MetricsReport &m)
{
    std::vector<std::pair<std::string, double>> out;
    auto idx = [](Eigen::Index i) { return std::to_string(i + 1); };
    for (Eigen::Index j = 0; j < m.gamma_dl.size(); ++j)
        out.emplace_back("gamma_dl_" + idx(j), m.gamma_dl(j));
    for (Eigen::Index l = 0; l < m.gamma_eve_dl.rows(); ++l)
        for (Eigen::Index j = 0; j < m.gamma_eve_dl.cols(); ++j)
            out.emplace_back("gamma_eve_dl_" + idx(l) + "_" + idx(j), m.gamma_eve_dl(l, j));
    for (Eigen::Index k = 0; k < m.gamma_ul.size(); ++k)
        out.emplace_back("gamma_ul_" + idx(k), m.gamma_ul(k));
    for (Eigen::Index l = 0; l < m.gamma_eve_ul.rows(); ++l)
        for (Eigen::Index k = 0; k < m.gamma_eve_ul.cols(); ++k)
            out.emplace_back("gamma_eve_ul_" + idx(l) + "_" + idx(k), m.gamma_eve_ul(l, k));
    out.emplace_back("sc_dl", m.sc_dl);
    out.emplace_back("sc_ul", m.sc_ul);
    for (Eigen::Index l = 0; l < m.sensing_power.size(); ++l)
        out.emplace_back("sensing_power_" + idx(l), m.sensing_power(l));
    for (Eigen::Index l = 0; l < m.echo_sinr.size(); ++l)
        out.emplace_back("echo_sinr_" + idx(l), m.echo_sinr(l));
    out.emplace_back("total_power", m.total_power);
    return out;
}

std::string to_json(const MetricsReport &m)
{
    nlohmann::ordered_json j;
    for (const auto &[k, v] : flatten(m))
        j[k] = v;
    return j.dump(2);
}

} // namespace risisac
