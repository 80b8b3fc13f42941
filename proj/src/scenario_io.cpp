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

#include "scenario_yaml.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace risisac::detail
{

void check_keys(const YAML::Node &node, const std::set<std::string> &allowed, const std::string &prefix)
{
    if (!node.IsMap())
        throw ConfigError(prefix, "expected a mapping");
    for (const auto &kv : node)
    {
        std::string key = kv.first.as<std::string>();
        if (!allowed.count(key))
            throw ConfigError(prefix.empty() ? key : prefix + "." + key, "unknown key");
    }
}

double read_double(const YAML::Node &node, const std::string &key)
{
    if (!node.IsScalar())
        throw ConfigError(key, "expected a number");
    std::string s = node.Scalar();
    if (s == "inf" || s == ".inf" || s == "+inf" || s == ".Inf" || s == "Inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf" || s == "-.inf" || s == "-.Inf" || s == "-Inf")
        return -std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try
    {
        v = std::stod(s, &pos);
    }
    catch (const std::exception &)
    {
        throw ConfigError(key, "expected a number, got '" + s + "'");
    }
    if (pos != s.size())
        throw ConfigError(key, "expected a number, got '" + s + "'");
    return v;
}

std::string format_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? ".inf" : "-.inf";
    // Shortest decimal form that reads back to the same double.
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec)
    {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

namespace
{
int read_int(const YAML::Node &node, const std::string &key)
{
    double v = read_double(node, key);
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError(key, "expected an integer");
    return static_cast<int>(v);
}

bool read_bool(const YAML::Node &node, const std::string &key)
{
    try
    {
        return node.as<bool>();
    }
    catch (const YAML::Exception &)
    {
        throw ConfigError(key, "expected true or false");
    }
}

std::uint64_t read_u64(const YAML::Node &node, const std::string &key)
{
    try
    {
        return node.as<std::uint64_t>();
    }
    catch (const YAML::Exception &)
    {
        throw ConfigError(key, "expected an unsigned 64-bit integer");
    }
}

std::string join(const std::string &prefix, const std::string &key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

#define RD(node, field, key, path)                                                                                     \
    if (node[key])                                                                                                     \
    field = read_double(node[key], join(path, key))
#define RI(node, field, key, path)                                                                                     \
    if (node[key])                                                                                                     \
    field = read_int(node[key], join(path, key))
#define RB(node, field, key, path)                                                                                     \
    if (node[key])                                                                                                     \
    field = read_bool(node[key], join(path, key))

template <typename T>
std::vector<T> read_nodes(const YAML::Node &seq, const std::string &path, bool with_rcs)
{
    if (!seq.IsSequence())
        throw ConfigError(path, "expected a list");
    std::vector<T> out;
    for (std::size_t i = 0; i < seq.size(); ++i)
    {
        std::string p = path + "[" + std::to_string(i) + "]";
        const YAML::Node &n = seq[i];
        if (with_rcs)
            check_keys(n, {"distance", "azimuth", "rcs"}, p);
        else
            check_keys(n, {"distance", "azimuth"}, p);
        T t{};
        if constexpr (std::is_same_v<T, EveNode>)
            t.rcs = 1.0;
        if (!n["distance"] || !n["azimuth"])
            throw ConfigError(p, "distance and azimuth are required");
        t.distance = read_double(n["distance"], p + ".distance");
        t.azimuth = read_double(n["azimuth"], p + ".azimuth");
        if constexpr (std::is_same_v<T, EveNode>)
        {
            RD(n, t.rcs, "rcs", p);
        }
        out.push_back(t);
    }
    return out;
}
} // namespace

void apply_scenario_node(const YAML::Node &root, ScenarioConfig &cfg, const std::string &prefix)
{
    if (!root || root.IsNull())
        return;
    check_keys(root, {"array", "layout", "link", "thresholds", "budgets", "options"}, prefix);

    if (auto n = root["array"])
    {
        std::string p = join(prefix, "array");
        check_keys(n, {"n_tx", "n_rx", "n_ris_h", "n_ris_v", "spacing_bs", "spacing_ris", "wavelength"}, p);
        RI(n, cfg.array.n_tx, "n_tx", p);
        RI(n, cfg.array.n_rx, "n_rx", p);
        RI(n, cfg.array.n_ris_h, "n_ris_h", p);
        RI(n, cfg.array.n_ris_v, "n_ris_v", p);
        RD(n, cfg.array.spacing_bs, "spacing_bs", p);
        RD(n, cfg.array.spacing_ris, "spacing_ris", p);
        RD(n, cfg.array.wavelength, "wavelength", p);
    }
    if (auto n = root["layout"])
    {
        std::string p = join(prefix, "layout");
        check_keys(n, {"bs_position", "ris", "dl_users", "ul_users", "eves"}, p);
        if (auto b = n["bs_position"])
        {
            if (!b.IsSequence() || b.size() != 2)
                throw ConfigError(p + ".bs_position", "expected [x, y]");
            cfg.layout.bs_position[0] = read_double(b[0], p + ".bs_position");
            cfg.layout.bs_position[1] = read_double(b[1], p + ".bs_position");
        }
        if (auto r = n["ris"])
        {
            std::string pr = p + ".ris";
            check_keys(r, {"distance_from_bs", "azimuth_from_bs", "broadside_deg"}, pr);
            RD(r, cfg.layout.ris.distance_from_bs, "distance_from_bs", pr);
            RD(r, cfg.layout.ris.azimuth_from_bs, "azimuth_from_bs", pr);
            RD(r, cfg.layout.ris.broadside_deg, "broadside_deg", pr);
        }
        if (n["dl_users"])
            cfg.layout.dl_users = read_nodes<PolarNode>(n["dl_users"], p + ".dl_users", false);
        if (n["ul_users"])
            cfg.layout.ul_users = read_nodes<PolarNode>(n["ul_users"], p + ".ul_users", false);
        if (n["eves"])
            cfg.layout.eves = read_nodes<EveNode>(n["eves"], p + ".eves", true);
    }
    if (auto n = root["link"])
    {
        std::string p = join(prefix, "link");
        check_keys(n,
                   {"gain_tx_bs", "gain_rx_bs", "gain_rx_user", "gain_rx_eve", "gain_tx_ul", "rician_k", "noise",
                    "self_interference", "clutter_power"},
                   p);
        auto &b = cfg.link;
        RD(n, b.gain_tx_bs, "gain_tx_bs", p);
        RD(n, b.gain_rx_bs, "gain_rx_bs", p);
        RD(n, b.gain_rx_user, "gain_rx_user", p);
        RD(n, b.gain_rx_eve, "gain_rx_eve", p);
        RD(n, b.gain_tx_ul, "gain_tx_ul", p);
        RD(n, b.clutter_power, "clutter_power", p);
        if (auto k = n["rician_k"])
        {
            std::string pk = p + ".rician_k";
            check_keys(k, {"bs_ris", "ris_user", "ul_ris", "ris_eve", "direct"}, pk);
            RD(k, b.rician_k.bs_ris, "bs_ris", pk);
            RD(k, b.rician_k.ris_user, "ris_user", pk);
            RD(k, b.rician_k.ul_ris, "ul_ris", pk);
            RD(k, b.rician_k.ris_eve, "ris_eve", pk);
            RD(k, b.rician_k.direct, "direct", pk);
        }
        if (auto k = n["noise"])
        {
            std::string pk = p + ".noise";
            check_keys(k, {"noise_figure", "bandwidth", "temperature"}, pk);
            RD(k, b.noise.noise_figure, "noise_figure", pk);
            RD(k, b.noise.bandwidth, "bandwidth", pk);
            RD(k, b.noise.temperature, "temperature", pk);
        }
        if (auto k = n["self_interference"])
        {
            std::string pk = p + ".self_interference";
            check_keys(k, {"residual_db", "si_steer_angle"}, pk);
            RD(k, b.self_interference.residual_db, "residual_db", pk);
            RD(k, b.self_interference.si_steer_angle, "si_steer_angle", pk);
        }
    }
    if (auto n = root["thresholds"])
    {
        std::string p = join(prefix, "thresholds");
        check_keys(n, {"gamma_dl_min", "gamma_ul_min", "gamma_eve_dl_max", "gamma_eve_ul_max", "p_max_dbm"}, p);
        auto &t = cfg.thresholds;
        RD(n, t.gamma_dl_min, "gamma_dl_min", p);
        RD(n, t.gamma_ul_min, "gamma_ul_min", p);
        RD(n, t.gamma_eve_dl_max, "gamma_eve_dl_max", p);
        RD(n, t.gamma_eve_ul_max, "gamma_eve_ul_max", p);
        RD(n, t.p_max_dbm, "p_max_dbm", p);
    }
    if (auto n = root["budgets"])
    {
        std::string p = join(prefix, "budgets");
        check_keys(n,
                   {"ao_iters", "sca_iters", "ris_iters", "feasibility_iters", "randomization_draws", "solver_tol",
                    "seed"},
                   p);
        auto &u = cfg.budgets;
        RI(n, u.ao_iters, "ao_iters", p);
        RI(n, u.sca_iters, "sca_iters", p);
        RI(n, u.feasibility_iters, "feasibility_iters", p);
        RI(n, u.ris_iters, "ris_iters", p);
        RI(n, u.randomization_draws, "randomization_draws", p);
        RD(n, u.solver_tol, "solver_tol", p);
        if (n["seed"])
            u.seed = read_u64(n["seed"], join(p, "seed"));
    }
    if (auto n = root["options"])
    {
        std::string p = join(prefix, "options");
        check_keys(n, {"refresh_combiners", "monotone_ris_update", "link_mode", "block_direct_links"}, p);
        auto &o = cfg.options;
        RB(n, o.refresh_combiners, "refresh_combiners", p);
        RB(n, o.monotone_ris_update, "monotone_ris_update", p);
        RB(n, o.block_direct_links, "block_direct_links", p);
        if (n["link_mode"])
            o.link_mode = link_mode_from_string(n["link_mode"].as<std::string>());
    }
}

#undef RD
#undef RI
#undef RB

void emit_scenario(YAML::Emitter &out, const ScenarioConfig &cfg)
{
    auto num = [&](const char *key, double v) { out << YAML::Key << key << YAML::Value << format_double(v); };
    auto cnt = [&](const char *key, long long v) { out << YAML::Key << key << YAML::Value << v; };

    out << YAML::BeginMap;
    out << YAML::Key << "array" << YAML::Value << YAML::BeginMap;
    cnt("n_tx", cfg.array.n_tx);
    cnt("n_rx", cfg.array.n_rx);
    cnt("n_ris_h", cfg.array.n_ris_h);
    cnt("n_ris_v", cfg.array.n_ris_v);
    num("spacing_bs", cfg.array.spacing_bs);
    num("spacing_ris", cfg.array.spacing_ris);
    num("wavelength", cfg.array.wavelength);
    out << YAML::EndMap;

    out << YAML::Key << "layout" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "bs_position" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << format_double(cfg.layout.bs_position[0]) << format_double(cfg.layout.bs_position[1]) << YAML::EndSeq;
    out << YAML::Key << "ris" << YAML::Value << YAML::BeginMap;
    num("distance_from_bs", cfg.layout.ris.distance_from_bs);
    num("azimuth_from_bs", cfg.layout.ris.azimuth_from_bs);
    num("broadside_deg", cfg.layout.ris.broadside_deg);
    out << YAML::EndMap;
    auto nodes = [&](const char *key, const auto &v)
    {
        out << YAML::Key << key << YAML::Value << YAML::BeginSeq;
        for (const auto &n : v)
        {
            out << YAML::Flow << YAML::BeginMap;
            num("distance", n.distance);
            num("azimuth", n.azimuth);
            if constexpr (std::is_same_v<std::decay_t<decltype(n)>, EveNode>)
                num("rcs", n.rcs);
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    };
    nodes("dl_users", cfg.layout.dl_users);
    nodes("ul_users", cfg.layout.ul_users);
    nodes("eves", cfg.layout.eves);
    out << YAML::EndMap;

    const auto &b = cfg.link;
    out << YAML::Key << "link" << YAML::Value << YAML::BeginMap;
    num("gain_tx_bs", b.gain_tx_bs);
    num("gain_rx_bs", b.gain_rx_bs);
    num("gain_rx_user", b.gain_rx_user);
    num("gain_rx_eve", b.gain_rx_eve);
    num("gain_tx_ul", b.gain_tx_ul);
    out << YAML::Key << "rician_k" << YAML::Value << YAML::BeginMap;
    num("bs_ris", b.rician_k.bs_ris);
    num("ris_user", b.rician_k.ris_user);
    num("ul_ris", b.rician_k.ul_ris);
    num("ris_eve", b.rician_k.ris_eve);
    num("direct", b.rician_k.direct);
    out << YAML::EndMap;
    out << YAML::Key << "noise" << YAML::Value << YAML::BeginMap;
    num("noise_figure", b.noise.noise_figure);
    num("bandwidth", b.noise.bandwidth);
    num("temperature", b.noise.temperature);
    out << YAML::EndMap;
    out << YAML::Key << "self_interference" << YAML::Value << YAML::BeginMap;
    num("residual_db", b.self_interference.residual_db);
    num("si_steer_angle", b.self_interference.si_steer_angle);
    out << YAML::EndMap;
    num("clutter_power", b.clutter_power);
    out << YAML::EndMap;

    const auto &t = cfg.thresholds;
    out << YAML::Key << "thresholds" << YAML::Value << YAML::BeginMap;
    num("gamma_dl_min", t.gamma_dl_min);
    num("gamma_ul_min", t.gamma_ul_min);
    num("gamma_eve_dl_max", t.gamma_eve_dl_max);
    num("gamma_eve_ul_max", t.gamma_eve_ul_max);
    num("p_max_dbm", t.p_max_dbm);
    out << YAML::EndMap;

    const auto &u = cfg.budgets;
    out << YAML::Key << "budgets" << YAML::Value << YAML::BeginMap;
    cnt("ao_iters", u.ao_iters);
    cnt("sca_iters", u.sca_iters);
    cnt("feasibility_iters", u.feasibility_iters);
    cnt("ris_iters", u.ris_iters);
    cnt("randomization_draws", u.randomization_draws);
    num("solver_tol", u.solver_tol);
    out << YAML::Key << "seed" << YAML::Value << u.seed;
    out << YAML::EndMap;

    const auto &o = cfg.options;
    out << YAML::Key << "options" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "refresh_combiners" << YAML::Value << o.refresh_combiners;
    out << YAML::Key << "monotone_ris_update" << YAML::Value << o.monotone_ris_update;
    out << YAML::Key << "link_mode" << YAML::Value << to_string(o.link_mode);
    out << YAML::Key << "block_direct_links" << YAML::Value << o.block_direct_links;
    out << YAML::EndMap;
    out << YAML::EndMap;
}

} // namespace risisac::detail

namespace risisac
{

ScenarioConfig parse_scenario(const std::string &text)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (const YAML::Exception &e)
    {
        throw ConfigError("", std::string("malformed scenario file: ") + e.what());
    }
    ScenarioConfig cfg = default_scenario();
    detail::apply_scenario_node(root, cfg);
    validate(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string dump_scenario(const ScenarioConfig &cfg)
{
    YAML::Emitter out;
    detail::emit_scenario(out, cfg);
    return std::string(out.c_str()) + "\n";
}

} // namespace risisac
