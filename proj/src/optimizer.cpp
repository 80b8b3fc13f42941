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

#include "risisac/optimizer.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <limits>
#include <optional>

namespace risisac
{

OptimizerSettings settings_from(const ScenarioConfig &cfg)
{
    OptimizerSettings s;
    s.solver_tol = cfg.budgets.solver_tol;
    s.draws = cfg.budgets.randomization_draws;
    s.refresh_combiners = cfg.options.refresh_combiners;
    s.monotone_ris_update = cfg.options.monotone_ris_update;
    s.sca_iters = cfg.budgets.sca_iters;
    s.ris_iters = cfg.budgets.ris_iters;
    s.ao_iters = cfg.budgets.ao_iters;
    s.feasibility_iters = cfg.budgets.feasibility_iters;
    return s;
}

std::string to_string(Termination t)
{
    switch (t)
    {
    case Termination::Completed:
        return "Completed";
    case Termination::Infeasible:
        return "Infeasible";
    case Termination::LaterInfeasible:
        return "LaterInfeasible";
    }
    return "Infeasible";
}

namespace
{

MatC gram(const RowC &h) { return h.adjoint() * h; }

MatC herm(const MatC &A) { return 0.5 * (A + A.adjoint()); }

// Hermitian PSD projection (clips negative eigenvalues).
MatC psd_part(const MatC &A)
{
    Eigen::SelfAdjointEigenSolver<MatC> es(herm(A));
    VecR ev = es.eigenvalues().cwiseMax(0.0);
    return herm(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
}

double shortfall(double value, double target)
{
    if (target <= 0.0)
        return 0.0;
    return std::max(0.0, 1.0 - value / target);
}

double excess(double value, double cap)
{
    if (cap <= 0.0)
        return value > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::max(0.0, value / cap - 1.0);
}

bool usable(const SolveOutcome &o)
{
    if (o.status == SolveStatus::Optimal)
        return true;
    // Stalled close to the optimum: the caller re-checks feasibility through the metrics.
    return (o.status == SolveStatus::IterationLimit || o.status == SolveStatus::NumericalFailure) &&
           !o.values.empty() && o.stats.primal_residual < 1e-6 && o.stats.gap < 1e-4;
}

MatC total_echo(const CascadedLinks &c)
{
    MatC H = MatC::Zero(c.Nr, c.Nt);
    for (const auto &h : c.H_BEB)
        H += h;
    return H;
}

// Elastic penalty on the relative violation when the RIS phases are searched for feasibility.
constexpr double kElasticWeight = 1e3;

double slack_scale(double gamma) { return gamma > 0.0 ? gamma : 1.0; }

MatC E00()
{
    MatC E = MatC::Zero(2, 2);
    E(0, 0) = 1.0;
    return E;
}

MatC E11()
{
    MatC E = MatC::Zero(2, 2);
    E(1, 1) = 1.0;
    return E;
}

} // namespace

AuditResult audit(const CascadedLinks &c, const DesignState &st, const SystemModel &m, double rel_tol)
{
    AuditResult a;
    for (int j = 0; j < c.J; ++j)
    {
        a.dl_user = std::max(a.dl_user, shortfall(sinr_dl_user(c, st, j), m.gamma_dl));
        for (int l = 0; l < c.L; ++l)
            a.dl_eve = std::max(a.dl_eve, excess(sinr_dl_eve(c, st, j, l), m.gamma_eve_dl));
    }
    const std::vector<VecC> r = int(st.r.size()) == c.K ? st.r : optimal_combiners(c, st);
    for (int k = 0; k < c.K; ++k)
    {
        a.ul_bs = std::max(a.ul_bs, shortfall(sinr_ul_bs(c, st, k, r[k]), m.gamma_ul));
        for (int l = 0; l < c.L; ++l)
            a.ul_eve = std::max(a.ul_eve, excess(sinr_ul_eve(c, st, k, l), m.gamma_eve_ul));
    }
    a.power = excess(st.total_power(), m.p_max);
    a.min_sensing = std::numeric_limits<double>::infinity();
    for (int l = 0; l < c.L; ++l)
        a.min_sensing = std::min(a.min_sensing, sensing_power(c, st, l));
    if (c.L == 0)
        a.min_sensing = 0.0;
    a.sensing = shortfall(a.min_sensing, st.alpha);
    a.max_violation = std::max({a.dl_user, a.dl_eve, a.ul_bs, a.ul_eve, a.power, a.sensing});
    a.feasible = a.max_violation <= rel_tol;
    return a;
}

WSubproblem build_subproblem_w(const CascadedLinks &c, const DesignState &anchor, const SystemModel &m, double margin,
                               bool feasibility)
{
    WSubproblem w;
    ConicProblem &P = w.problem;
    const double Pu = m.p_max > 0.0 ? m.p_max : 1.0;
    const double sig = c.noise;
    w.p_unit = Pu;

    const double g_dl = m.gamma_dl * (1.0 + margin);
    const double g_eve_dl = m.gamma_eve_dl * (1.0 - margin);
    const double g_ul = m.gamma_ul * (1.0 + margin);
    const double g_eve_ul = m.gamma_eve_ul * (1.0 - margin);

    for (int j = 0; j < c.J; ++j)
        w.W.push_back(P.add_psd("W_" + std::to_string(j + 1), c.Nt));
    w.C_z = P.add_psd("C_z", c.Nt);
    for (int k = 0; k < c.K; ++k)
        w.Pi.push_back(P.add_psd("Pi_" + std::to_string(k + 1), 2));
    if (feasibility)
        w.slack = P.add_nonneg("t");
    else
        w.alpha = P.add_nonneg("alpha");
    auto relax = [&](AffineExpr &e, double coef)
    {
        if (w.slack >= 0)
            e.add(w.slack, coef);
    };

    std::vector<MatC> Hu, He;
    for (int j = 0; j < c.J; ++j)
        Hu.push_back(gram(c.h_BU[j]));
    for (int l = 0; l < c.L; ++l)
        He.push_back(gram(c.h_BE[l]));

    // UL expansion points.
    std::vector<VecC> u(c.K);
    std::vector<double> a(c.K, 0.0);
    w.power_scale.assign(c.K, 1.0);
    std::vector<double> kappa(c.K, 1.0);
    for (int k = 0; k < c.K; ++k)
    {
        MatC D0 = ul_interference(c, anchor, k);
        Eigen::LLT<MatC> llt(D0);
        u[k] = llt.solve(c.h_VB[k]);
        a[k] = c.h_VB[k].dot(u[k]).real();
        if (!(a[k] > 0.0) || !std::isfinite(a[k]))
        {
            w.trivially_infeasible = m.gamma_ul > 0.0;
            a[k] = 0.0;
            continue;
        }
        double s = std::clamp(g_ul / (Pu * a[k]), 1e-8, 1.0);
        w.power_scale[k] = Pu * s;
        kappa[k] = g_ul / (Pu * s * a[k]);
    }

    auto add_cs = [&](AffineExpr &e, const MatC &A)
    {
        for (int j = 0; j < c.J; ++j)
            e.add(w.W[j], A);
        e.add(w.C_z, A);
    };
    auto add_p = [&](AffineExpr &e, int k, double coef) { e.add(w.Pi[k], coef * w.power_scale[k] * E00()); };

    for (int j = 0; j < c.J; ++j)
    {
        AffineExpr e;
        e.add(w.W[j], (Pu / sig) * Hu[j]);
        for (int jj = 0; jj < c.J; ++jj)
            if (jj != j)
                e.add(w.W[jj], (-g_dl * Pu / sig) * Hu[j]);
        e.add(w.C_z, (-g_dl * Pu / sig) * Hu[j]);
        for (int k = 0; k < c.K; ++k)
            add_p(e, k, -g_dl * std::norm(c.h_VU(k, j)) / sig);
        e.add_constant(-g_dl);
        relax(e, slack_scale(g_dl));
        P.add_constraint(std::move(e), Sense::GreaterEq, "dl_user_" + std::to_string(j + 1));
    }
    for (int j = 0; j < c.J; ++j)
        for (int l = 0; l < c.L; ++l)
        {
            AffineExpr e;
            e.add(w.W[j], (Pu / sig) * He[l]);
            for (int jj = 0; jj < c.J; ++jj)
                if (jj != j)
                    e.add(w.W[jj], (-g_eve_dl * Pu / sig) * He[l]);
            e.add(w.C_z, (-g_eve_dl * Pu / sig) * He[l]);
            for (int k = 0; k < c.K; ++k)
                add_p(e, k, -g_eve_dl * std::norm(c.h_VE(k, l)) / sig);
            e.add_constant(-g_eve_dl);
            relax(e, -slack_scale(g_eve_dl));
            P.add_constraint(std::move(e), Sense::LessEq,
                             "dl_eve_" + std::to_string(l + 1) + "_" + std::to_string(j + 1));
        }

    const MatC Hbeb = total_echo(c);
    for (int k = 0; k < c.K; ++k)
    {
        if (a[k] <= 0.0)
            continue;
        const VecC &uk = u[k];
        RowC ue = uk.adjoint() * Hbeb;
        RowC us = uk.adjoint() * c.H_BB;
        MatC Acs = (Pu / a[k]) * (ue.adjoint() * ue + c.xi_si * us.adjoint() * us);
        AffineExpr e;
        e.add(w.Pi[k], kappa[k] * E11());
        add_cs(e, herm(Acs));
        for (int kk = 0; kk < c.K; ++kk)
            if (kk != k)
                add_p(e, kk, std::norm(uk.dot(c.h_VB[kk])) / a[k]);
        e.add_constant((uk.dot(c.R_c * uk).real() + sig * uk.squaredNorm()) / a[k] - 2.0);
        relax(e, -1.0);
        P.add_constraint(std::move(e), Sense::LessEq, "ul_bs_" + std::to_string(k + 1));

        MatC Er = MatC::Zero(2, 2);
        Er(0, 1) = 0.5;
        Er(1, 0) = 0.5;
        AffineExpr re;
        re.add(w.Pi[k], Er).add_constant(-1.0);
        P.add_constraint(std::move(re), Sense::Equal, "ul_epigraph_re_" + std::to_string(k + 1));
        MatC Ei = MatC::Zero(2, 2);
        Ei(0, 1) = cd(0.0, 0.5);
        Ei(1, 0) = cd(0.0, -0.5);
        AffineExpr im;
        im.add(w.Pi[k], Ei);
        P.add_constraint(std::move(im), Sense::Equal, "ul_epigraph_im_" + std::to_string(k + 1));
    }
    if (w.trivially_infeasible)
    {
        AffineExpr e;
        e.add_constant(1.0);
        P.add_constraint(std::move(e), Sense::LessEq, "ul_no_channel");
    }

    for (int k = 0; k < c.K; ++k)
        for (int l = 0; l < c.L; ++l)
        {
            AffineExpr e;
            add_p(e, k, std::norm(c.h_VE(k, l)) / sig);
            for (int kk = 0; kk < c.K; ++kk)
                if (kk != k)
                    add_p(e, kk, -g_eve_ul * std::norm(c.h_VE(kk, l)) / sig);
            add_cs(e, (-g_eve_ul * Pu / sig) * He[l]);
            e.add_constant(-g_eve_ul);
            relax(e, -slack_scale(g_eve_ul));
            P.add_constraint(std::move(e), Sense::LessEq,
                             "ul_eve_" + std::to_string(l + 1) + "_" + std::to_string(k + 1));
        }

    {
        AffineExpr e;
        add_cs(e, MatC::Identity(c.Nt, c.Nt));
        for (int k = 0; k < c.K; ++k)
            add_p(e, k, 1.0 / Pu);
        e.add_constant(m.p_max > 0.0 ? -(1.0 - margin) : 0.0);
        P.add_constraint(std::move(e), Sense::LessEq, "power");
    }

    double smax = 0.0;
    for (int l = 0; l < c.L; ++l)
        smax = std::max(smax, He[l].trace().real());
    w.alpha_unit = smax > 0.0 ? Pu * smax : Pu;
    if (feasibility)
    {
        AffineExpr obj;
        obj.add(w.slack, 1.0);
        P.set_objective(Direction::Minimize, obj);
        return w;
    }
    for (int l = 0; l < c.L; ++l)
    {
        AffineExpr e;
        add_cs(e, (Pu / w.alpha_unit) * He[l]);
        e.add(w.alpha, -1.0);
        P.add_constraint(std::move(e), Sense::GreaterEq, "sensing_" + std::to_string(l + 1));
    }
    AffineExpr obj;
    obj.add(w.alpha, 1.0);
    P.set_objective(Direction::Maximize, obj);
    return w;
}

DesignState decode_w(const WSubproblem &w, const SolveOutcome &o, const DesignState &base)
{
    DesignState st = base;
    st.W.clear();
    for (int v : w.W)
        st.W.push_back(psd_part(w.p_unit * o.matrix(v)));
    st.C_z = psd_part(w.p_unit * o.matrix(w.C_z));
    st.p = VecR::Zero(int(w.Pi.size()));
    for (std::size_t k = 0; k < w.Pi.size(); ++k)
        st.p(k) = std::max(0.0, w.power_scale[k] * o.matrix(w.Pi[k])(0, 0).real());
    st.alpha = w.alpha >= 0 ? std::max(0.0, w.alpha_unit * o.scalar(w.alpha)) : 0.0;
    st.r.clear();
    return st;
}

double ul_surrogate(const CascadedLinks &c, const DesignState &anchor, const DesignState &st, int k, double gamma)
{
    MatC D0 = ul_interference(c, anchor, k);
    VecC u = Eigen::LLT<MatC>(D0).solve(c.h_VB[k]);
    double a = c.h_VB[k].dot(u).real();
    MatC D = ul_interference(c, st, k);
    double b = u.dot(D * u).real();
    return gamma / st.p(k) + b - 2.0 * a;
}

std::pair<VecC, double> extract_rank_one(const MatC &W)
{
    const double tr = W.trace().real();
    if (!(tr > 0.0))
        throw Error("extract_rank_one: zero matrix");
    Eigen::SelfAdjointEigenSolver<MatC> es(herm(W));
    const Eigen::Index n = W.rows();
    double lmax = std::max(0.0, es.eigenvalues()(n - 1));
    VecC w = std::sqrt(lmax) * es.eigenvectors().col(n - 1);
    return {w, lmax / tr};
}

VecC extract_rank_one_preserving(const MatC &W, const RowC &h)
{
    VecC g = W * h.adjoint();
    const double s = (h * g)(0, 0).real();
    if (!(s > 0.0))
        return extract_rank_one(W).first;
    return g / std::sqrt(s);
}

ExtractionResult extract_all(const CascadedLinks &c, const DesignState &st, const SystemModel &m, double rel_tol)
{
    ExtractionResult ex;
    DesignState principal = st;
    for (int j = 0; j < c.J; ++j)
    {
        if (!(st.W[j].trace().real() > 0.0))
        {
            ex.ratio.push_back(1.0);
            continue;
        }
        auto [w, ratio] = extract_rank_one(st.W[j]);
        principal.W[j] = w * w.adjoint();
        ex.ratio.push_back(ratio);
    }
    principal.r.clear();
    AuditResult ap = audit(c, principal, m, rel_tol);
    ex.principal_violation = ap.max_violation;
    ex.principal_ok = ap.feasible;
    if (ap.feasible)
    {
        ex.state = principal;
        return ex;
    }
    DesignState kept = st;
    for (int j = 0; j < c.J; ++j)
    {
        if (!(st.W[j].trace().real() > 0.0))
            continue;
        VecC w = extract_rank_one_preserving(st.W[j], c.h_BU[j]);
        MatC ww = w * w.adjoint();
        kept.C_z = psd_part(kept.C_z + st.W[j] - ww);
        kept.W[j] = ww;
    }
    kept.r.clear();
    ex.state = kept;
    return ex;
}

ScaResult sca_loop_w(const CascadedLinks &c, const DesignState &st, const SystemModel &m, const OptimizerSettings &s,
                     int outer)
{
    ScaResult res;
    DesignState anchor = st;
    double best = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < s.sca_iters; ++n)
    {
        SubproblemTrace tr;
        tr.outer = outer;
        tr.inner = n;
        tr.kind = 'W';
        WSubproblem wp = build_subproblem_w(c, anchor, m, s.threshold_margin);
        SolveOutcome o = solve(wp.problem, s.solver_tol);
        tr.status = wp.trivially_infeasible ? SolveStatus::Infeasible : o.status;
        if (wp.trivially_infeasible || !usable(o))
        {
            res.trace.push_back(tr);
            break;
        }
        DesignState cand = decode_w(wp, o, st);
        tr.alpha = cand.alpha;
        ExtractionResult ex = extract_all(c, cand, m, s.audit_tol);
        tr.rank_one_ratio = ex.ratio;
        ++res.extraction_checks;
        if (ex.principal_violation > 0.10)
            ++res.extraction_flags;
        DesignState next = ex.state;
        next.r = optimal_combiners(c, next);
        AuditResult au = audit(c, next, m, s.audit_tol);
        tr.max_violation = au.max_violation;
        if (au.feasible && au.min_sensing >= best * (1.0 - 1e-9))
        {
            tr.accepted = true;
            best = au.min_sensing;
            res.state = next;
            res.feasible = true;
            anchor = next;
        }
        else if (!res.feasible)
            anchor = cand;
        res.trace.push_back(tr);
    }
    return res;
}

ScaResult sca_loop_w_phase1(const CascadedLinks &c, const DesignState &st, const SystemModel &m,
                            const OptimizerSettings &s, int outer)
{
    ScaResult res;
    DesignState anchor = st;
    double best = std::numeric_limits<double>::infinity();
    for (int n = 0; n < s.sca_iters; ++n)
    {
        SubproblemTrace tr;
        tr.outer = outer;
        tr.inner = n;
        tr.kind = 'W';
        tr.phase1 = true;
        WSubproblem wp = build_subproblem_w(c, anchor, m, s.threshold_margin, true);
        SolveOutcome o = solve(wp.problem, s.solver_tol);
        tr.status = wp.trivially_infeasible ? SolveStatus::Infeasible : o.status;
        if (wp.trivially_infeasible || !usable(o))
        {
            res.trace.push_back(tr);
            break;
        }
        tr.alpha = o.scalar(wp.slack);
        DesignState cand = decode_w(wp, o, st);
        ExtractionResult ex = extract_all(c, cand, m, s.audit_tol);
        tr.rank_one_ratio = ex.ratio;
        DesignState next = ex.state;
        next.r = optimal_combiners(c, next);
        AuditResult au = audit(c, next, m, s.audit_tol);
        tr.max_violation = au.max_violation;
        if (au.max_violation < best)
        {
            best = au.max_violation;
            res.state = next;
            res.feasible = au.feasible;
            tr.accepted = true;
        }
        res.trace.push_back(tr);
        anchor = next;
        if (au.feasible)
            break;
    }
    if (!std::isfinite(best))
        res.state = st;
    return res;
}

namespace
{

// Q-form objects for the active link mode; the homogenized variable is v' = [q; 1].
struct QForm
{
    int dim = 0;
    bool homogenized = false;
    std::vector<MatC> BU, BE;                 // dim x Nt
    std::vector<MatC> VB;                     // Nr x dim
    std::vector<std::vector<VecC>> VU, VE;    // dim
};

QForm qform(const ChannelSet &ch, const DirectLinkSet *direct, LinkMode mode)
{
    QForm f;
    f.homogenized = mode == LinkMode::WithDirect;
    f.dim = ch.N + (f.homogenized ? 1 : 0);
    auto stackr = [&](const MatC &A, const RowC &d)
    {
        if (!f.homogenized)
            return A;
        MatC out(A.rows() + 1, A.cols());
        out << A, d;
        return out;
    };
    auto stackc = [&](const MatC &A, const VecC &d)
    {
        if (!f.homogenized)
            return A;
        MatC out(A.rows(), A.cols() + 1);
        out << A, d;
        return out;
    };
    auto stackv = [&](const VecC &a, cd d)
    {
        if (!f.homogenized)
            return a;
        VecC out(a.size() + 1);
        out << a, d;
        return out;
    };
    for (int j = 0; j < ch.J; ++j)
        f.BU.push_back(stackr(ch.Hbar_BU[j], f.homogenized ? direct->h_BU[j] : RowC()));
    for (int l = 0; l < ch.L; ++l)
        f.BE.push_back(stackr(ch.Hbar_BE[l], f.homogenized ? direct->h_BE[l] : RowC()));
    f.VU.assign(ch.K, {});
    f.VE.assign(ch.K, {});
    for (int k = 0; k < ch.K; ++k)
    {
        f.VB.push_back(stackc(ch.Hbar_VB[k], f.homogenized ? direct->h_VB[k] : VecC()));
        for (int j = 0; j < ch.J; ++j)
            f.VU[k].push_back(stackv(ch.hbar_VU[k][j], f.homogenized ? direct->h_VU(k, j) : cd(0.0)));
        for (int l = 0; l < ch.L; ++l)
            f.VE[k].push_back(stackv(ch.hbar_VE[k][l], f.homogenized ? direct->h_VE(k, l) : cd(0.0)));
    }
    return f;
}

MatC cgram(const MatC &H, const MatC &X) { return herm(H * X * H.adjoint()).conjugate(); }
MatC cgram(const VecC &h) { return herm(h * h.adjoint()).conjugate(); }

} // namespace

QSubproblem build_subproblem_q(const ChannelSet &ch, const DirectLinkSet *direct, LinkMode mode,
                               const DesignState &st, const SystemModel &m, double margin, bool feasibility)
{
    if (mode == LinkMode::RisLess)
        throw Error("build_subproblem_q: no RIS in RIS-less mode");
    QSubproblem q;
    const QForm f = qform(ch, direct, mode);
    q.dim = f.dim;
    q.homogenized = f.homogenized;
    ConicProblem &P = q.problem;
    q.Q = P.add_psd("Q", f.dim);
    q.alpha = P.add_nonneg("alpha");
    if (feasibility)
        q.slack = P.add_nonneg("t");
    auto relax = [&](AffineExpr &e, double coef)
    {
        if (q.slack >= 0)
            e.add(q.slack, coef);
    };

    const double sig = ch.noise;
    const double g_dl = m.gamma_dl * (1.0 + margin);
    const double g_eve_dl = m.gamma_eve_dl * (1.0 - margin);
    const double g_ul = m.gamma_ul * (1.0 + margin);
    const double g_eve_ul = m.gamma_eve_ul * (1.0 - margin);
    const MatC Cs = st.C_s();
    const CascadedLinks cur = cascade(ch, st.q, mode, direct);

    for (int j = 0; j < ch.J; ++j)
    {
        AffineExpr e;
        MatC A = cgram(f.BU[j], st.W[j]);
        for (int jj = 0; jj < ch.J; ++jj)
            if (jj != j)
                A -= g_dl * cgram(f.BU[j], st.W[jj]);
        A -= g_dl * cgram(f.BU[j], st.C_z);
        for (int k = 0; k < ch.K; ++k)
            A -= g_dl * st.p(k) * cgram(f.VU[k][j]);
        e.add(q.Q, A / sig).add_constant(-g_dl);
        relax(e, slack_scale(g_dl));
        P.add_constraint(std::move(e), Sense::GreaterEq, "dl_user_" + std::to_string(j + 1));
    }
    for (int j = 0; j < ch.J; ++j)
        for (int l = 0; l < ch.L; ++l)
        {
            AffineExpr e;
            MatC A = cgram(f.BE[l], st.W[j]);
            for (int jj = 0; jj < ch.J; ++jj)
                if (jj != j)
                    A -= g_eve_dl * cgram(f.BE[l], st.W[jj]);
            A -= g_eve_dl * cgram(f.BE[l], st.C_z);
            for (int k = 0; k < ch.K; ++k)
                A -= g_eve_dl * st.p(k) * cgram(f.VE[k][l]);
            e.add(q.Q, A / sig).add_constant(-g_eve_dl);
            relax(e, -slack_scale(g_eve_dl));
            P.add_constraint(std::move(e), Sense::LessEq,
                             "dl_eve_" + std::to_string(l + 1) + "_" + std::to_string(j + 1));
        }
    for (int k = 0; k < ch.K; ++k)
    {
        MatC E = ul_interference(cur, st, k);
        MatC Ei = Eigen::LLT<MatC>(E).solve(MatC::Identity(ch.Nr, ch.Nr));
        MatC M = herm(f.VB[k].adjoint() * Ei * f.VB[k]);
        AffineExpr e;
        e.add(q.Q, (st.p(k) / g_ul) * M).add_constant(-1.0);
        relax(e, 1.0);
        P.add_constraint(std::move(e), Sense::GreaterEq, "ul_bs_" + std::to_string(k + 1));
    }
    std::vector<MatC> S(ch.L);
    for (int l = 0; l < ch.L; ++l)
        S[l] = cgram(f.BE[l], Cs);
    for (int k = 0; k < ch.K; ++k)
        for (int l = 0; l < ch.L; ++l)
        {
            MatC A = st.p(k) * cgram(f.VE[k][l]);
            for (int kk = 0; kk < ch.K; ++kk)
                if (kk != k)
                    A -= g_eve_ul * st.p(kk) * cgram(f.VE[kk][l]);
            A -= g_eve_ul * S[l];
            AffineExpr e;
            e.add(q.Q, A / sig).add_constant(-g_eve_ul);
            relax(e, -slack_scale(g_eve_ul));
            P.add_constraint(std::move(e), Sense::LessEq,
                             "ul_eve_" + std::to_string(l + 1) + "_" + std::to_string(k + 1));
        }
    double smax = 0.0;
    for (int l = 0; l < ch.L; ++l)
        smax = std::max(smax, S[l].trace().real());
    q.alpha_unit = smax > 0.0 ? smax * f.dim : 1.0;
    for (int l = 0; l < ch.L; ++l)
    {
        AffineExpr e;
        e.add(q.Q, S[l] / q.alpha_unit).add(q.alpha, -1.0);
        P.add_constraint(std::move(e), Sense::GreaterEq, "sensing_" + std::to_string(l + 1));
    }
    for (int n = 0; n < f.dim; ++n)
    {
        MatC E = MatC::Zero(f.dim, f.dim);
        E(n, n) = 1.0;
        AffineExpr e;
        e.add(q.Q, E).add_constant(-1.0);
        P.add_constraint(std::move(e), Sense::Equal, "unit_modulus_" + std::to_string(n + 1));
    }
    AffineExpr obj;
    obj.add(q.alpha, 1.0);
    if (feasibility)
        obj.add(q.slack, -kElasticWeight);
    P.set_objective(Direction::Maximize, obj);
    return q;
}

RandomizationResult gaussian_randomize(const MatC &Q, int draws, const ChannelSet &ch, const DirectLinkSet *direct,
                                       LinkMode mode, const DesignState &st, const SystemModel &m, RngStream &rng,
                                       double rel_tol)
{
    const int dim = int(Q.rows());
    const bool homog = dim == ch.N + 1;
    Eigen::SelfAdjointEigenSolver<MatC> es(herm(Q));
    VecR lam = es.eigenvalues();
    const double floor = 1e-12 * std::max(0.0, lam.maxCoeff());
    lam = lam.unaryExpr([floor](double x) { return x > floor ? x : 0.0; });
    const MatC US = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();

    RandomizationResult best;
    best.violation = std::numeric_limits<double>::infinity();
    for (int i = 0; i < draws; ++i)
    {
        VecC e(dim);
        for (int n = 0; n < dim; ++n)
            e(n) = std::polar(1.0, rng.uniform(-kPi, kPi));
        VecC v = US * e;
        VecC q(ch.N);
        const cd ref = homog ? v(ch.N) : cd(1.0);
        for (int n = 0; n < ch.N; ++n)
        {
            cd z = std::abs(ref) > 0.0 ? v(n) / ref : v(n);
            q(n) = std::abs(z) > 0.0 ? z / std::abs(z) : cd(1.0);
        }
        DesignState cand = st;
        cand.q = q;
        CascadedLinks c = cascade(ch, q, mode, direct);
        cand.r = optimal_combiners(c, cand);
        cand.alpha = 0.0;
        AuditResult a = audit(c, cand, m, rel_tol);
        bool better;
        if (a.feasible != best.feasible)
            better = a.feasible;
        else if (a.feasible)
            better = a.min_sensing > best.objective;
        else
            better = a.max_violation < best.violation;
        if (better || best.index < 0)
        {
            best.q = q;
            best.feasible = a.feasible;
            best.objective = a.min_sensing;
            best.violation = a.max_violation;
            best.index = i;
        }
    }
    return best;
}

DesignState initial_state(const ChannelSet &ch, const DirectLinkSet *direct, LinkMode mode, const SystemModel &m,
                          const ArrayGeometry &geom, double phi_rb)
{
    DesignState st;
    if (mode != LinkMode::RisLess)
        st.q = ris_steering(0.0, phi_rb, geom).conjugate().transpose();
    CascadedLinks c = cascade(ch, st.q, mode, direct);
    MatC H(ch.J, ch.Nt);
    for (int j = 0; j < ch.J; ++j)
        H.row(j) = c.h_BU[j];
    MatC Wzf = H.completeOrthogonalDecomposition().pseudoInverse();
    st.W.clear();
    for (int j = 0; j < ch.J; ++j)
    {
        VecC w = Wzf.col(j);
        if (!(w.norm() > 0.0) || !w.allFinite())
            w = VecC::Unit(ch.Nt, j % ch.Nt);
        w /= w.norm();
        st.W.push_back(w * w.adjoint());
    }
    st.C_z = MatC::Zero(ch.Nt, ch.Nt);
    st.p = VecR::Ones(ch.K);
    const double total = double(ch.J) + double(ch.K);
    const double scale = total > m.p_max ? m.p_max / total : 1.0;
    for (auto &W : st.W)
        W *= scale;
    st.p *= scale;
    st.r = optimal_combiners(c, st);
    st.alpha = 0.0;
    return st;
}

AoResult ao_solve(const ScenarioConfig &cfg, const ChannelSet &ch, const DirectLinkSet *direct)
{
    const auto t0 = std::chrono::steady_clock::now();
    const SystemModel m = resolve(cfg);
    const OptimizerSettings s = settings_from(cfg);
    const GeometryTables geo = derive_geometry(cfg);
    const LinkMode mode = cfg.options.link_mode;
    if (mode != LinkMode::RisOnly && (direct == nullptr || !direct->present))
        throw Error("ao_solve: direct-link mode requires direct channels");

    AoResult res;
    DesignState st = initial_state(ch, direct, mode, m, cfg.array, geo.phi_rb);
    CascadedLinks links = cascade(ch, st.q, mode, direct);
    RngStream rng(cfg.budgets.seed, "randomization");
    bool have_feasible = false;
    bool later_failure = false;

    auto append = [&](const ScaResult &r)
    {
        res.traces.insert(res.traces.end(), r.trace.begin(), r.trace.end());
        res.extraction_checks += r.extraction_checks;
        res.extraction_flags += r.extraction_flags;
    };
    auto violation = [&](const DesignState &x)
    {
        DesignState y = x;
        y.alpha = 0.0;
        return audit(links, y, m, s.audit_tol).max_violation;
    };

    // Violation-minimizing passes until the beamforming subproblem admits a point.
    std::optional<ScaResult> first;
    for (int t = 0; t <= s.feasibility_iters; ++t)
    {
        ScaResult sca = sca_loop_w(links, st, m, s, 0);
        if (sca.feasible)
        {
            first = std::move(sca);
            break;
        }
        if (t == s.feasibility_iters)
        {
            append(sca);
            break;
        }
        append(sca);
        ScaResult ph = sca_loop_w_phase1(links, st, m, s, t);
        append(ph);
        if (violation(ph.state) < violation(st))
            st = ph.state;
        if (mode == LinkMode::RisLess)
        {
            if (!ph.feasible)
                break;
            continue;
        }
        for (int g = 0; g < s.ris_iters; ++g)
        {
            SubproblemTrace tr;
            tr.outer = t;
            tr.inner = g;
            tr.kind = 'Q';
            tr.phase1 = true;
            QSubproblem qp = build_subproblem_q(ch, direct, mode, st, m, s.threshold_margin, true);
            SolveOutcome o = solve(qp.problem, s.solver_tol);
            tr.status = o.status;
            if (usable(o))
            {
                const MatC &Q = o.matrix(qp.Q);
                tr.alpha = o.scalar(qp.slack);
                tr.rank_one_ratio = {extract_rank_one(Q).second};
                DesignState probe = st;
                probe.alpha = 0.0;
                RandomizationResult rr = gaussian_randomize(Q, s.draws, ch, direct, mode, probe, m, rng, s.audit_tol);
                tr.max_violation = rr.violation;
                const double current = violation(st);
                DesignState trial = st;
                trial.q = rr.q;
                const CascadedLinks cl = cascade(ch, trial.q, mode, direct);
                trial.r = optimal_combiners(cl, trial);
                ScaResult fit = sca_loop_w_phase1(cl, trial, m, s, t);
                append(fit);
                DesignState probe2 = fit.state;
                probe2.alpha = 0.0;
                const double after = audit(cl, probe2, m, s.audit_tol).max_violation;
                if (std::min(after, rr.violation) < current)
                {
                    st = after < rr.violation ? fit.state : trial;
                    links = cl;
                    st.r = optimal_combiners(links, st);
                    tr.accepted = true;
                }
            }
            res.traces.push_back(tr);
        }
    }

    for (int t = 0; t < s.ao_iters && first; ++t)
    {
        ScaResult sca = t == 0 ? std::move(*first) : sca_loop_w(links, st, m, s, t);
        append(sca);
        if (sca.feasible)
        {
            st = sca.state;
            have_feasible = true;
        }
        else
            later_failure = true;

        if (mode != LinkMode::RisLess)
        {
            for (int g = 0; g < s.ris_iters; ++g)
            {
                SubproblemTrace tr;
                tr.outer = t;
                tr.inner = g;
                tr.kind = 'Q';
                QSubproblem qp = build_subproblem_q(ch, direct, mode, st, m, s.threshold_margin);
                SolveOutcome o = solve(qp.problem, s.solver_tol);
                tr.status = o.status;
                if (usable(o))
                {
                    const MatC &Q = o.matrix(qp.Q);
                    tr.alpha = qp.alpha_unit * o.scalar(qp.alpha);
                    tr.rank_one_ratio = {extract_rank_one(Q).second};
                    RandomizationResult rr = gaussian_randomize(Q, s.draws, ch, direct, mode, st, m, rng, s.audit_tol);
                    tr.max_violation = rr.violation;
                    const double current = audit(links, st, m, s.audit_tol).min_sensing;
                    if (rr.feasible && (!s.monotone_ris_update || rr.objective >= current))
                    {
                        st.q = rr.q;
                        links = cascade(ch, st.q, mode, direct);
                        st.r = optimal_combiners(links, st);
                        tr.accepted = true;
                    }
                    else if (rr.q.size() > 0)
                    {
                        // Re-fit the beamformers to the candidate phases before judging it.
                        DesignState trial = st;
                        trial.q = rr.q;
                        const CascadedLinks cl = cascade(ch, trial.q, mode, direct);
                        trial.r = optimal_combiners(cl, trial);
                        ScaResult fit = sca_loop_w(cl, trial, m, s, t);
                        append(fit);
                        if (fit.feasible)
                        {
                            const double got = audit(cl, fit.state, m, s.audit_tol).min_sensing;
                            if (!s.monotone_ris_update || got >= current)
                            {
                                st = fit.state;
                                links = cl;
                                tr.accepted = true;
                            }
                        }
                    }
                }
                res.traces.push_back(tr);
            }
        }
        AuditResult a = audit(links, st, m, s.audit_tol);
        st.alpha = a.min_sensing;
        res.alpha_trace.push_back(a.min_sensing);
        res.reports.push_back(evaluate(links, st));
    }
    if (!have_feasible)
    {
        res.reports.push_back(evaluate(links, st));
        res.alpha_trace.push_back(audit(links, st, m, s.audit_tol).min_sensing);
    }
    res.state = st;
    res.feasible = have_feasible;
    res.reason = have_feasible ? (later_failure ? Termination::LaterInfeasible : Termination::Completed)
                               : Termination::Infeasible;
    res.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

AoResult ao_solve_benchmark(const ScenarioConfig &cfg, const ChannelSet &ch, const DirectLinkSet &direct)
{
    ScenarioConfig c = cfg;
    if (c.options.link_mode == LinkMode::RisOnly)
        c.options.link_mode = LinkMode::RisLess;
    return ao_solve(c, ch, &direct);
}

} // namespace risisac
