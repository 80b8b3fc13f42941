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

#include "risisac/scenario.hpp"

#include <cmath>

namespace risisac
{

std::vector<double> equidistant_azimuths(int n, double a, double b)
{
    if (n < 1)
        throw ConfigError("", "equidistant placement needs at least one node");
    std::vector<double> out(n);
    if (n == 1)
    {
        out[0] = 0.5 * (a + b);
        return out;
    }
    for (int i = 0; i < n; ++i)
        out[i] = a + (b - a) * double(i) / double(n - 1);
    return out;
}

ScenarioConfig default_scenario()
{
    ScenarioConfig cfg;
    for (double az : equidistant_azimuths(2, -15.0, 5.0))
        cfg.layout.dl_users.push_back({30.0, az});
    for (double az : equidistant_azimuths(3, 20.0, 30.0))
        cfg.layout.ul_users.push_back({20.0, az});
    for (double az : equidistant_azimuths(2, -35.0, -15.0))
        cfg.layout.eves.push_back({20.0, az, 1.0});
    return cfg;
}

static void require(bool ok, const std::string &key, const std::string &what)
{
    if (!ok)
        throw ConfigError(key, what);
}

static bool finite(double x) { return std::isfinite(x); }

static void check_k(double v, const std::string &key)
{
    require(!std::isnan(v) && v != -std::numeric_limits<double>::infinity(), key, "must be a dB value or inf");
}

void validate(const ScenarioConfig &cfg)
{
    const auto &a = cfg.array;
    require(a.n_tx >= 1, "array.n_tx", "must be >= 1");
    require(a.n_rx >= 1, "array.n_rx", "must be >= 1");
    require(a.n_ris_h >= 1, "array.n_ris_h", "must be >= 1");
    require(a.n_ris_v >= 1, "array.n_ris_v", "must be >= 1");
    require(finite(a.spacing_bs) && a.spacing_bs > 0, "array.spacing_bs", "must be > 0");
    require(finite(a.spacing_ris) && a.spacing_ris > 0, "array.spacing_ris", "must be > 0");
    require(finite(a.wavelength) && a.wavelength > 0, "array.wavelength", "must be > 0");

    const auto &l = cfg.layout;
    require(finite(l.bs_position[0]) && finite(l.bs_position[1]), "layout.bs_position", "must be finite");
    require(finite(l.ris.distance_from_bs) && l.ris.distance_from_bs > 0, "layout.ris.distance_from_bs", "must be > 0");
    require(finite(l.ris.azimuth_from_bs), "layout.ris.azimuth_from_bs", "must be finite");
    require(finite(l.ris.broadside_deg), "layout.ris.broadside_deg", "must be finite");
    require(!l.dl_users.empty(), "layout.dl_users", "at least one DL user required");
    require(!l.ul_users.empty(), "layout.ul_users", "at least one UL user required");
    require(!l.eves.empty(), "layout.eves", "at least one eavesdropper required");
    auto nodes = [&](const auto &v, const std::string &name)
    {
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            std::string key = "layout." + name + "[" + std::to_string(i) + "]";
            require(finite(v[i].distance) && v[i].distance > 0, key + ".distance", "must be > 0");
            require(finite(v[i].azimuth), key + ".azimuth", "must be finite");
        }
    };
    nodes(l.dl_users, "dl_users");
    nodes(l.ul_users, "ul_users");
    nodes(l.eves, "eves");
    for (std::size_t i = 0; i < l.eves.size(); ++i)
        require(finite(l.eves[i].rcs) && l.eves[i].rcs > 0, "layout.eves[" + std::to_string(i) + "].rcs", "must be > 0");

    const auto &b = cfg.link;
    require(finite(b.gain_tx_bs), "link.gain_tx_bs", "must be finite");
    require(finite(b.gain_rx_bs), "link.gain_rx_bs", "must be finite");
    require(finite(b.gain_rx_user), "link.gain_rx_user", "must be finite");
    require(finite(b.gain_rx_eve), "link.gain_rx_eve", "must be finite");
    require(finite(b.gain_tx_ul), "link.gain_tx_ul", "must be finite");
    check_k(b.rician_k.bs_ris, "link.rician_k.bs_ris");
    check_k(b.rician_k.ris_user, "link.rician_k.ris_user");
    check_k(b.rician_k.ul_ris, "link.rician_k.ul_ris");
    check_k(b.rician_k.ris_eve, "link.rician_k.ris_eve");
    check_k(b.rician_k.direct, "link.rician_k.direct");
    require(finite(b.noise.noise_figure), "link.noise.noise_figure", "must be finite");
    require(finite(b.noise.bandwidth) && b.noise.bandwidth > 0, "link.noise.bandwidth", "must be > 0");
    require(finite(b.noise.temperature) && b.noise.temperature > 0, "link.noise.temperature", "must be > 0");
    require(!std::isnan(b.self_interference.residual_db) && b.self_interference.residual_db != INFINITY,
            "link.self_interference.residual_db", "must be finite or -inf");
    require(finite(b.self_interference.si_steer_angle), "link.self_interference.si_steer_angle", "must be finite");
    require(finite(b.clutter_power) && b.clutter_power >= 0, "link.clutter_power", "must be >= 0");

    const auto &t = cfg.thresholds;
    require(finite(t.gamma_dl_min), "thresholds.gamma_dl_min", "must be finite");
    require(finite(t.gamma_ul_min), "thresholds.gamma_ul_min", "must be finite");
    require(finite(t.gamma_eve_dl_max), "thresholds.gamma_eve_dl_max", "must be finite");
    require(finite(t.gamma_eve_ul_max), "thresholds.gamma_eve_ul_max", "must be finite");
    require(!std::isnan(t.p_max_dbm) && t.p_max_dbm != INFINITY, "thresholds.p_max_dbm", "must be finite or -inf");

    const auto &u = cfg.budgets;
    require(u.ao_iters >= 1, "budgets.ao_iters", "must be >= 1");
    require(u.sca_iters >= 1, "budgets.sca_iters", "must be >= 1");
    require(u.feasibility_iters >= 0, "budgets.feasibility_iters", "must be >= 0");
    require(u.ris_iters >= 1, "budgets.ris_iters", "must be >= 1");
    require(u.randomization_draws >= 1, "budgets.randomization_draws", "must be >= 1");
    require(finite(u.solver_tol) && u.solver_tol > 0, "budgets.solver_tol", "must be > 0");
}

namespace
{
Eigen::Vector2d polar(const std::array<double, 2> &origin, double d, double az_deg)
{
    double a = deg_to_rad(az_deg);
    return {origin[0] + d * std::cos(a), origin[1] + d * std::sin(a)};
}

// Angle of (to - from) measured from a reference direction, wrapped to (-pi, pi].
double relative_azimuth(const Eigen::Vector2d &from, const Eigen::Vector2d &to, double ref_rad)
{
    Eigen::Vector2d d = to - from;
    double a = ref_rad - std::atan2(d.y(), d.x());
    return std::remainder(a, 2.0 * kPi);
}
} // namespace

GeometryTables derive_geometry(const ScenarioConfig &cfg)
{
    validate(cfg);
    const auto &l = cfg.layout;
    GeometryTables g;
    g.bs = {l.bs_position[0], l.bs_position[1]};
    g.ris = polar(l.bs_position, l.ris.distance_from_bs, l.ris.azimuth_from_bs);
    g.d_br = (g.ris - g.bs).norm();

    const double broadside = deg_to_rad(l.ris.broadside_deg);
    g.phi_rb = relative_azimuth(g.ris, g.bs, broadside);
    g.phi_br = -relative_azimuth(g.bs, g.ris, 0.0);

    auto place = [&](const auto &nodes, std::vector<Eigen::Vector2d> &pos, std::vector<double> &d_r,
                     std::vector<double> &d_b, std::vector<double> &phi_r, std::vector<double> &phi_b,
                     const char *name)
    {
        for (std::size_t i = 0; i < nodes.size(); ++i)
        {
            Eigen::Vector2d p = polar(l.bs_position, nodes[i].distance, nodes[i].azimuth);
            double dr = (p - g.ris).norm();
            if (dr < 1e-9 * std::max(1.0, g.d_br))
                throw DegenerateGeometry(std::string(name) + "[" + std::to_string(i) + "] coincides with the RIS");
            pos.push_back(p);
            d_r.push_back(dr);
            d_b.push_back((p - g.bs).norm());
            phi_r.push_back(relative_azimuth(g.ris, p, broadside));
            phi_b.push_back(-relative_azimuth(g.bs, p, 0.0));
        }
    };
    place(l.dl_users, g.dl_users, g.d_ru, g.d_bu, g.phi_ru, g.phi_bu, "dl_users");
    place(l.eves, g.eves, g.d_re, g.d_be, g.phi_re, g.phi_be, "eves");
    place(l.ul_users, g.ul_users, g.d_vr, g.d_bv, g.phi_rv, g.phi_bv, "ul_users");

    g.d_vu.assign(g.ul_users.size(), {});
    g.d_ve.assign(g.ul_users.size(), {});
    for (std::size_t k = 0; k < g.ul_users.size(); ++k)
    {
        for (const auto &u : g.dl_users)
            g.d_vu[k].push_back((u - g.ul_users[k]).norm());
        for (const auto &e : g.eves)
            g.d_ve[k].push_back((e - g.ul_users[k]).norm());
    }
    return g;
}

double noise_power(const LinkBudget &budget)
{
    return db_to_linear(budget.noise.noise_figure) * kBoltzmann * budget.noise.temperature * budget.noise.bandwidth;
}

static double k_linear(double db)
{
    return std::isinf(db) ? std::numeric_limits<double>::infinity() : db_to_linear(db);
}

SystemModel resolve(const ScenarioConfig &cfg)
{
    validate(cfg);
    SystemModel m;
    m.Nt = cfg.array.n_tx;
    m.Nr = cfg.array.n_rx;
    m.N = cfg.N();
    m.J = cfg.J();
    m.K = cfg.K();
    m.L = cfg.L();
    m.lambda = cfg.array.wavelength;
    m.delta_a = cfg.array.spacing_bs;
    m.delta_r = cfg.array.spacing_ris;
    m.g_tb = db_to_linear(cfg.link.gain_tx_bs);
    m.g_rb = db_to_linear(cfg.link.gain_rx_bs);
    m.g_ru = db_to_linear(cfg.link.gain_rx_user);
    m.g_re = db_to_linear(cfg.link.gain_rx_eve);
    m.g_tv = db_to_linear(cfg.link.gain_tx_ul);
    m.k_br = k_linear(cfg.link.rician_k.bs_ris);
    m.k_ru = k_linear(cfg.link.rician_k.ris_user);
    m.k_vr = k_linear(cfg.link.rician_k.ul_ris);
    m.k_re = k_linear(cfg.link.rician_k.ris_eve);
    m.k_direct = k_linear(cfg.link.rician_k.direct);
    m.noise = noise_power(cfg.link);
    m.xi_si = db_to_linear(cfg.link.self_interference.residual_db);
    m.si_steer = deg_to_rad(cfg.link.self_interference.si_steer_angle);
    m.clutter = cfg.link.clutter_power;
    m.gamma_dl = db_to_linear(cfg.thresholds.gamma_dl_min);
    m.gamma_ul = db_to_linear(cfg.thresholds.gamma_ul_min);
    m.gamma_eve_dl = db_to_linear(cfg.thresholds.gamma_eve_dl_max);
    m.gamma_eve_ul = db_to_linear(cfg.thresholds.gamma_eve_ul_max);
    m.p_max = db_to_linear(cfg.thresholds.p_max_dbm) * 1e-3;
    for (const auto &e : cfg.layout.eves)
        m.rcs.push_back(e.rcs);
    return m;
}

std::string to_string(LinkMode m)
{
    switch (m)
    {
    case LinkMode::RisOnly:
        return "ris-only";
    case LinkMode::RisLess:
        return "ris-less";
    case LinkMode::WithDirect:
        return "with-direct";
    }
    return "ris-only";
}

LinkMode link_mode_from_string(const std::string &s)
{
    if (s == "ris-only")
        return LinkMode::RisOnly;
    if (s == "ris-less")
        return LinkMode::RisLess;
    if (s == "with-direct")
        return LinkMode::WithDirect;
    throw ConfigError("options.link_mode", "expected ris-only, ris-less or with-direct, got '" + s + "'");
}

} // namespace risisac
