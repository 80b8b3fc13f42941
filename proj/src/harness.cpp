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

#include "json.hpp"
#include "scenario_yaml.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#ifndef RISISAC_VERSION
#define RISISAC_VERSION "0.0.0"
#endif

namespace risisac
{

namespace
{

const std::vector<std::pair<ExperimentKind, std::string>> kKinds = {
    {ExperimentKind::Convergence, "Convergence"},         {ExperimentKind::ScSweep, "ScSweep"},
    {ExperimentKind::Beampattern, "Beampattern"},         {ExperimentKind::EchoVsThreshold, "EchoVsThreshold"},
    {ExperimentKind::EchoVsK, "EchoVsK"},                 {ExperimentKind::FeasibilityRate, "FeasibilityRate"},
};

std::string fmt(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double to_db(double v) { return v > 0.0 ? linear_to_db(v) : -std::numeric_limits<double>::infinity(); }

int as_count(const std::string &parameter, double value)
{
    if (!(value >= 1.0) || value != std::floor(value) || value > 1e6)
        throw ConfigError("sweep.values", parameter + " needs positive integer values");
    return int(value);
}

template <class Node> void respread(std::vector<Node> &nodes, int n, const std::string &key)
{
    if (nodes.empty())
        throw ConfigError(key, "cannot resize an empty node list");
    double lo = nodes.front().azimuth, hi = nodes.front().azimuth;
    for (const auto &x : nodes)
    {
        lo = std::min(lo, x.azimuth);
        hi = std::max(hi, x.azimuth);
    }
    const Node proto = nodes.front();
    nodes.assign(n, proto);
    const std::vector<double> az = equidistant_azimuths(n, lo, hi);
    for (int i = 0; i < n; ++i)
        nodes[i].azimuth = az[i];
}

std::uint64_t fnv1a64(const std::string &s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

nlohmann::ordered_json matrix_json(const MatC &A)
{
    nlohmann::ordered_json re = nlohmann::ordered_json::array(), im = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i)
    {
        std::vector<double> r, s;
        for (Eigen::Index j = 0; j < A.cols(); ++j)
        {
            r.push_back(A(i, j).real());
            s.push_back(A(i, j).imag());
        }
        re.push_back(r);
        im.push_back(s);
    }
    return {{"re", re}, {"im", im}};
}

MatC matrix_from_json(const nlohmann::json &j)
{
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    const Eigen::Index rows = Eigen::Index(re.size());
    const Eigen::Index cols = rows > 0 ? Eigen::Index(re[0].size()) : 0;
    MatC A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            A(i, k) = cd(re[i][k].get<double>(), im[i][k].get<double>());
    return A;
}

std::string mode_tag(LinkMode m) { return to_string(m); }

} // namespace

std::string to_string(ExperimentKind k)
{
    for (const auto &[kind, name] : kKinds)
        if (kind == k)
            return name;
    return "Convergence";
}

ExperimentKind experiment_kind_from_string(const std::string &s)
{
    for (const auto &[kind, name] : kKinds)
        if (name == s)
            return kind;
    throw ConfigError("kind", "unknown experiment kind '" + s + "'");
}

std::vector<double> AngleGrid::points() const
{
    if (!(step_deg > 0.0) || !(max_deg >= min_deg))
        throw ConfigError("grid", "grid needs step_deg > 0 and max_deg >= min_deg");
    std::vector<double> out;
    const long n = std::lround(std::floor((max_deg - min_deg) / step_deg + 1e-9));
    for (long i = 0; i <= n; ++i)
        out.push_back(min_deg + double(i) * step_deg);
    return out;
}

void apply_sweep_value(ScenarioConfig &cfg, const std::string &parameter, double value)
{
    if (parameter == "none")
        ;
    else if (parameter == "gamma_dl_min_db")
        cfg.thresholds.gamma_dl_min = value;
    else if (parameter == "gamma_ul_min_db")
        cfg.thresholds.gamma_ul_min = value;
    else if (parameter == "gamma_eve_dl_max_db")
        cfg.thresholds.gamma_eve_dl_max = value;
    else if (parameter == "gamma_eve_ul_max_db")
        cfg.thresholds.gamma_eve_ul_max = value;
    else if (parameter == "p_max_dbm")
        cfg.thresholds.p_max_dbm = value;
    else if (parameter == "ul_count")
        respread(cfg.layout.ul_users, as_count(parameter, value), "layout.ul_users");
    else if (parameter == "dl_count")
        respread(cfg.layout.dl_users, as_count(parameter, value), "layout.dl_users");
    else if (parameter == "eve_count")
        respread(cfg.layout.eves, as_count(parameter, value), "layout.eves");
    else if (parameter == "rician_k_db")
    {
        cfg.link.rician_k.bs_ris = value;
        cfg.link.rician_k.ris_user = value;
        cfg.link.rician_k.ul_ris = value;
        cfg.link.rician_k.direct = value;
    }
    else if (parameter == "n_antennas")
    {
        cfg.array.n_tx = as_count(parameter, value);
        cfg.array.n_rx = cfg.array.n_tx;
    }
    else
        throw ConfigError("sweep.parameter", "unknown sweep parameter '" + parameter + "'");
    validate(cfg);
}

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint32_t sweep_index, std::uint32_t trial_index)
{
    // mix64 is a bijection, so distinct (sweep, trial) pairs never collide for a fixed master seed.
    const std::uint64_t cell = (std::uint64_t(sweep_index) << 32) | std::uint64_t(trial_index);
    return mix64(master + mix64(cell));
}

ExperimentSpec parse_experiment(const std::string &text)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (const YAML::Exception &e)
    {
        throw ConfigError("", std::string("malformed experiment file: ") + e.what());
    }
    if (!root.IsMap())
        throw ConfigError("", "experiment file must be a mapping");
    detail::check_keys(root,
                       {"name", "kind", "trials", "seed", "common_channels", "modes", "sweep", "grid", "workers",
                        "output_dir", "scenario"},
                       "");
    ExperimentSpec spec;
    spec.base = default_scenario();
    bool seed_given = false;
    try
    {
        if (root["name"])
            spec.name = root["name"].as<std::string>();
        if (!root["kind"])
            throw ConfigError("kind", "missing experiment kind");
        spec.kind = experiment_kind_from_string(root["kind"].as<std::string>());
        if (root["trials"])
            spec.trials = root["trials"].as<int>();
        if (root["seed"])
        {
            spec.seed = root["seed"].as<std::uint64_t>();
            seed_given = true;
        }
        if (root["common_channels"])
            spec.common_channels = root["common_channels"].as<bool>();
        if (root["workers"])
            spec.workers = root["workers"].as<int>();
        if (root["output_dir"])
            spec.output_dir = root["output_dir"].as<std::string>();
        if (root["modes"])
            for (const auto &m : root["modes"])
                spec.modes.push_back(link_mode_from_string(m.as<std::string>()));
        if (const YAML::Node s = root["sweep"])
        {
            detail::check_keys(s, {"parameter", "values"}, "sweep.");
            if (s["parameter"])
                spec.sweep.parameter = s["parameter"].as<std::string>();
            if (s["values"])
            {
                spec.sweep.values.clear();
                for (const auto &v : s["values"])
                    spec.sweep.values.push_back(v.as<double>());
            }
        }
        if (const YAML::Node g = root["grid"])
        {
            detail::check_keys(g, {"min_deg", "max_deg", "step_deg"}, "grid.");
            if (g["min_deg"])
                spec.grid.min_deg = g["min_deg"].as<double>();
            if (g["max_deg"])
                spec.grid.max_deg = g["max_deg"].as<double>();
            if (g["step_deg"])
                spec.grid.step_deg = g["step_deg"].as<double>();
        }
    }
    catch (const YAML::Exception &e)
    {
        throw ConfigError("", std::string("bad value in experiment file: ") + e.what());
    }
    if (root["scenario"])
        detail::apply_scenario_node(root["scenario"], spec.base, "scenario.");
    if (!seed_given)
        spec.seed = spec.base.budgets.seed;
    validate(spec.base);
    if (spec.trials < 1)
        throw ConfigError("trials", "trials must be at least 1");
    if (spec.sweep.values.empty())
        throw ConfigError("sweep.values", "sweep needs at least one value");
    for (double v : spec.sweep.values)
    {
        ScenarioConfig probe = spec.base;
        apply_sweep_value(probe, spec.sweep.parameter, v);
    }
    spec.grid.points();
    return spec;
}

ExperimentSpec load_experiment(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open experiment file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment(ss.str());
}

namespace
{

std::vector<LinkMode> modes_of(const ExperimentSpec &spec)
{
    if (!spec.modes.empty())
        return spec.modes;
    if (spec.kind == ExperimentKind::FeasibilityRate)
        return {LinkMode::WithDirect, LinkMode::RisLess};
    return {spec.base.options.link_mode};
}

} // namespace

TrialResult run_trial(const ExperimentSpec &spec, int sweep_index, LinkMode mode, int trial)
{
    TrialResult t;
    t.sweep_index = sweep_index;
    t.sweep_value = spec.sweep.values.at(sweep_index);
    t.mode = mode;
    t.trial = trial;
    t.seed = derive_trial_seed(spec.seed, spec.common_channels ? 0u : std::uint32_t(sweep_index),
                               std::uint32_t(trial));
    try
    {
        ScenarioConfig cfg = spec.base;
        apply_sweep_value(cfg, spec.sweep.parameter, t.sweep_value);
        cfg.options.link_mode = mode;
        cfg.budgets.seed = t.seed;
        const GeometryTables geo = derive_geometry(cfg);
        const ChannelSet ch = synthesize(cfg, geo, t.seed);
        DirectLinkSet direct;
        const DirectLinkSet *dp = nullptr;
        if (mode != LinkMode::RisOnly)
        {
            direct = synthesize_direct_links(cfg, geo, t.seed);
            dp = &direct;
        }
        const AoResult ao = ao_solve(cfg, ch, dp);
        t.feasible = ao.feasible;
        t.reason = to_string(ao.reason);
        t.runtime_s = ao.runtime_s;
        t.alpha_trace = ao.alpha_trace;
        t.extraction_checks = ao.extraction_checks;
        t.extraction_flags = ao.extraction_flags;
        t.state = ao.state;
        const CascadedLinks links = cascade(ch, ao.state.q, mode, dp);
        t.report = evaluate(links, ao.state);
        t.max_violation = audit(links, ao.state, resolve(cfg)).max_violation;
        if (spec.kind == ExperimentKind::Beampattern && mode != LinkMode::RisLess)
            for (double phi : spec.grid.points())
                t.beampattern_w.push_back(beampattern(ch, cfg.array, ao.state, deg_to_rad(phi)));
    }
    catch (const std::exception &e)
    {
        t.crashed = true;
        t.feasible = false;
        t.reason = "NumericalFailure";
        t.error = e.what();
    }
    return t;
}

std::vector<AggregateRow> aggregate(const std::vector<TrialResult> &trials)
{
    struct Acc
    {
        std::vector<double> v;
    };
    // Keyed by (sweep, mode); metric order follows first appearance.
    std::map<std::pair<int, int>, std::pair<double, std::vector<std::pair<std::string, Acc>>>> groups;
    auto push = [](std::vector<std::pair<std::string, Acc>> &list, const std::string &name, double v)
    {
        for (auto &[n, a] : list)
            if (n == name)
            {
                a.v.push_back(v);
                return;
            }
        list.push_back({name, Acc{{v}}});
    };
    std::vector<TrialResult> sorted = trials;
    std::sort(sorted.begin(), sorted.end(), [](const TrialResult &a, const TrialResult &b)
              { return std::tie(a.sweep_index, a.mode, a.trial) < std::tie(b.sweep_index, b.mode, b.trial); });
    for (const auto &t : sorted)
    {
        auto &g = groups[{t.sweep_index, int(t.mode)}];
        g.first = t.sweep_value;
        push(g.second, "feasible", t.feasible ? 1.0 : 0.0);
        if (!t.feasible)
            continue;
        push(g.second, "max_violation", t.max_violation);
        push(g.second, "extraction_flag_rate",
             t.extraction_checks > 0 ? double(t.extraction_flags) / t.extraction_checks : 0.0);
        if (!t.alpha_trace.empty())
            push(g.second, "min_sensing_power", t.alpha_trace.back());
        for (const auto &[name, v] : flatten(t.report))
            push(g.second, name, v);
    }
    std::vector<AggregateRow> rows;
    for (const auto &[key, g] : groups)
        for (const auto &[name, acc] : g.second)
        {
            AggregateRow r;
            r.sweep_index = key.first;
            r.mode = LinkMode(key.second);
            r.sweep_value = g.first;
            r.metric = name;
            r.count = int(acc.v.size());
            double sum = 0.0;
            r.min = acc.v.front();
            r.max = acc.v.front();
            for (double x : acc.v)
            {
                sum += x;
                r.min = std::min(r.min, x);
                r.max = std::max(r.max, x);
            }
            r.mean = sum / r.count;
            double ss = 0.0;
            for (double x : acc.v)
                ss += (x - r.mean) * (x - r.mean);
            r.std = r.count > 1 ? std::sqrt(ss / (r.count - 1)) : 0.0;
            rows.push_back(r);
        }
    return rows;
}

ExperimentResult run_experiment(const ExperimentSpec &spec)
{
    struct Job
    {
        int sweep;
        LinkMode mode;
        int trial;
    };
    std::vector<Job> jobs;
    for (int s = 0; s < int(spec.sweep.values.size()); ++s)
        for (LinkMode m : modes_of(spec))
            for (int t = 0; t < spec.trials; ++t)
                jobs.push_back({s, m, t});

    ExperimentResult res;
    res.config_hash = config_hash(spec);
    res.trials.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]
    {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
            res.trials[i] = run_trial(spec, jobs[i].sweep, jobs[i].mode, jobs[i].trial);
    };
    int n = spec.workers > 0 ? spec.workers : int(std::thread::hardware_concurrency());
    n = std::clamp(n, 1, std::max(1, int(jobs.size())));
    if (n == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }
    res.aggregate = aggregate(res.trials);
    if (!spec.output_dir.empty())
        write_outputs(spec, res);
    return res;
}

std::string config_hash(const ExperimentSpec &spec)
{
    std::ostringstream os;
    os << dump_scenario(spec.base) << "kind=" << to_string(spec.kind) << "\nsweep=" << spec.sweep.parameter;
    for (double v : spec.sweep.values)
        os << ' ' << fmt(v);
    os << "\ntrials=" << spec.trials << "\nseed=" << spec.seed << "\ncommon=" << spec.common_channels << "\nmodes=";
    for (LinkMode m : modes_of(spec))
        os << to_string(m) << ' ';
    os << "\ngrid=" << fmt(spec.grid.min_deg) << ' ' << fmt(spec.grid.max_deg) << ' ' << fmt(spec.grid.step_deg);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(os.str())));
    return buf;
}

std::string code_version() { return RISISAC_VERSION; }

std::string trial_to_json(const TrialResult &t, const ExperimentSpec &spec)
{
    nlohmann::ordered_json j;
    j["code_version"] = code_version();
    j["config_hash"] = config_hash(spec);
    j["experiment"] = spec.name;
    j["kind"] = to_string(spec.kind);
    j["sweep_parameter"] = spec.sweep.parameter;
    j["sweep_index"] = t.sweep_index;
    j["sweep_value"] = t.sweep_value;
    j["mode"] = to_string(t.mode);
    j["trial"] = t.trial;
    j["seed"] = t.seed;
    j["feasible"] = t.feasible;
    j["reason"] = t.reason;
    if (t.crashed)
        j["error"] = t.error;
    j["runtime_s"] = t.runtime_s;
    j["max_violation"] = t.max_violation;
    j["extraction_checks"] = t.extraction_checks;
    j["extraction_flags"] = t.extraction_flags;
    j["alpha_trace"] = t.alpha_trace;
    if (!t.crashed)
    {
        j["metrics"] = nlohmann::ordered_json::parse(to_json(t.report));
        nlohmann::ordered_json d;
        d["q"] = matrix_json(t.state.q);
        d["p"] = std::vector<double>(t.state.p.data(), t.state.p.data() + t.state.p.size());
        d["W"] = nlohmann::ordered_json::array();
        for (const auto &W : t.state.W)
            d["W"].push_back(matrix_json(W));
        d["C_z"] = matrix_json(t.state.C_z);
        d["alpha"] = t.state.alpha;
        j["design"] = d;
    }
    if (!t.beampattern_w.empty())
    {
        j["beampattern"]["phi_deg"] = spec.grid.points();
        j["beampattern"]["power_w"] = t.beampattern_w;
    }
    return j.dump(2);
}

DesignState design_from_json(const std::string &text, std::uint64_t *seed)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
        const auto &d = j.at("design");
        DesignState st;
        MatC q = matrix_from_json(d.at("q"));
        st.q = q.size() > 0 ? VecC(Eigen::Map<VecC>(q.data(), q.size())) : VecC();
        const auto p = d.at("p").get<std::vector<double>>();
        st.p = Eigen::Map<const VecR>(p.data(), Eigen::Index(p.size()));
        for (const auto &W : d.at("W"))
            st.W.push_back(matrix_from_json(W));
        st.C_z = matrix_from_json(d.at("C_z"));
        st.alpha = d.value("alpha", 0.0);
        if (seed)
            *seed = j.at("seed").get<std::uint64_t>();
        return st;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError("design", std::string("malformed design file: ") + e.what());
    }
}

void write_outputs(const ExperimentSpec &spec, const ExperimentResult &r)
{
    namespace fs = std::filesystem;
    const fs::path dir(spec.output_dir);
    fs::create_directories(dir / "trials");
    const std::string header = "# experiment=" + spec.name + " kind=" + to_string(spec.kind) +
                               " config_hash=" + r.config_hash + " code_version=" + code_version() + "\n";
    for (const auto &t : r.trials)
    {
        char name[160];
        std::snprintf(name, sizeof name, "s%03d_%s_t%03d.json", t.sweep_index, mode_tag(t.mode).c_str(), t.trial);
        std::ofstream(dir / "trials" / name) << trial_to_json(t, spec) << "\n";
    }
    {
        std::ofstream out(dir / "aggregate.csv");
        out << header << "sweep_index,sweep_parameter,sweep_value,mode,metric,count,mean,min,max,std\n";
        for (const auto &a : r.aggregate)
            out << a.sweep_index << ',' << spec.sweep.parameter << ',' << fmt(a.sweep_value) << ','
                << to_string(a.mode) << ',' << a.metric << ',' << a.count << ',' << fmt(a.mean) << ','
                << fmt(a.min) << ',' << fmt(a.max) << ',' << fmt(a.std) << "\n";
    }
    {
        std::ofstream out(dir / "runtime.csv");
        out << header << "sweep_index,sweep_value,mode,trial,runtime_s\n";
        for (const auto &t : r.trials)
            out << t.sweep_index << ',' << fmt(t.sweep_value) << ',' << to_string(t.mode) << ',' << t.trial << ','
                << fmt(t.runtime_s) << "\n";
    }
    const int L = spec.base.L();
    switch (spec.kind)
    {
    case ExperimentKind::Convergence:
    {
        std::ofstream out(dir / "alpha_trace.csv");
        out << header << "sweep_value,mode,trial,iteration,min_sensing_power_w,min_sensing_power_dbm\n";
        for (const auto &t : r.trials)
            for (std::size_t i = 0; i < t.alpha_trace.size() && t.feasible; ++i)
                out << fmt(t.sweep_value) << ',' << to_string(t.mode) << ',' << t.trial << ',' << i + 1 << ','
                    << fmt(t.alpha_trace[i]) << ',' << fmt(to_db(t.alpha_trace[i]) + 30.0) << "\n";
        break;
    }
    case ExperimentKind::ScSweep:
    {
        std::ofstream out(dir / "sc.csv");
        out << header << "sweep_value,mode,trial,feasible,sc_dl,sc_ul\n";
        for (const auto &t : r.trials)
            out << fmt(t.sweep_value) << ',' << to_string(t.mode) << ',' << t.trial << ',' << int(t.feasible) << ','
                << fmt(t.report.sc_dl) << ',' << fmt(t.report.sc_ul) << "\n";
        break;
    }
    case ExperimentKind::Beampattern:
    {
        std::ofstream out(dir / "beampattern.csv");
        out << header << "sweep_value,mode,trial,phi_deg,P_B_dBm\n";
        const std::vector<double> grid = spec.grid.points();
        for (const auto &t : r.trials)
            for (std::size_t i = 0; i < t.beampattern_w.size() && t.feasible; ++i)
                out << fmt(t.sweep_value) << ',' << to_string(t.mode) << ',' << t.trial << ',' << fmt(grid[i]) << ','
                    << fmt(to_db(t.beampattern_w[i]) + 30.0) << "\n";
        break;
    }
    case ExperimentKind::EchoVsThreshold:
    case ExperimentKind::EchoVsK:
    {
        const bool thr = spec.kind == ExperimentKind::EchoVsThreshold;
        std::ofstream out(dir / (thr ? "echo_vs_threshold.csv" : "echo_vs_k.csv"));
        out << header << (thr ? "gamma_dl_min_db" : spec.sweep.parameter) << ",trial";
        for (int l = 0; l < L; ++l)
            out << ",echo_sinr_db_target_" << l + 1;
        out << ",sc_dl,feasible\n";
        for (const auto &t : r.trials)
        {
            out << fmt(t.sweep_value) << ',' << t.trial;
            for (int l = 0; l < L; ++l)
                out << ',' << (t.feasible && l < t.report.echo_sinr.size() ? fmt(to_db(t.report.echo_sinr(l))) : "nan");
            out << ',' << (t.feasible ? fmt(t.report.sc_dl) : "nan") << ',' << int(t.feasible) << "\n";
        }
        break;
    }
    case ExperimentKind::FeasibilityRate:
    {
        std::ofstream out(dir / "feasibility.csv");
        out << header << "sweep_value,mode,trials,feasible_count,feasible_fraction\n";
        std::map<std::pair<int, int>, std::pair<int, int>> counts;
        std::map<int, double> values;
        for (const auto &t : r.trials)
        {
            auto &c = counts[{t.sweep_index, int(t.mode)}];
            ++c.first;
            c.second += t.feasible ? 1 : 0;
            values[t.sweep_index] = t.sweep_value;
        }
        for (const auto &[key, c] : counts)
            out << fmt(values[key.first]) << ',' << to_string(LinkMode(key.second)) << ',' << c.first << ','
                << c.second << ',' << fmt(double(c.second) / c.first) << "\n";
        break;
    }
    }
}

} // namespace risisac
