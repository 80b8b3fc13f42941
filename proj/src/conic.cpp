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

#include "risisac/conic.hpp"

#include "ipm.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace risisac
{

std::string to_string(SolveStatus s)
{
    switch (s)
    {
    case SolveStatus::Optimal:
        return "Optimal";
    case SolveStatus::Infeasible:
        return "Infeasible";
    case SolveStatus::NumericalFailure:
        return "NumericalFailure";
    case SolveStatus::IterationLimit:
        return "IterationLimit";
    }
    return "NumericalFailure";
}

AffineExpr &AffineExpr::add(int var, const MatC &coeff)
{
    matrix_terms.emplace_back(var, coeff);
    return *this;
}

AffineExpr &AffineExpr::add(int var, double coeff)
{
    scalar_terms.emplace_back(var, coeff);
    return *this;
}

AffineExpr &AffineExpr::add_constant(double c)
{
    constant += c;
    return *this;
}

int ConicProblem::add_psd(const std::string &name, int n)
{
    if (n < 1)
        throw Error("add_psd: block order must be >= 1");
    vars_.push_back({name, VarKind::HermitianPsd, n});
    return int(vars_.size()) - 1;
}

int ConicProblem::add_nonneg(const std::string &name)
{
    vars_.push_back({name, VarKind::Nonnegative, 1});
    return int(vars_.size()) - 1;
}

int ConicProblem::add_free(const std::string &name)
{
    vars_.push_back({name, VarKind::Free, 1});
    return int(vars_.size()) - 1;
}

void ConicProblem::check_term_(int var, bool matrix, Eigen::Index rows) const
{
    if (var < 0 || var >= int(vars_.size()))
        throw Error("conic: unknown variable index");
    const Variable &v = vars_[var];
    if (matrix != (v.kind == VarKind::HermitianPsd))
        throw Error("conic: term kind does not match variable '" + v.name + "'");
    if (matrix && rows != v.dim)
        throw Error("conic: coefficient size does not match variable '" + v.name + "'");
}

void ConicProblem::add_constraint(AffineExpr lhs, Sense sense, std::string label)
{
    for (const auto &[var, A] : lhs.matrix_terms)
    {
        check_term_(var, true, A.rows());
        if (A.rows() != A.cols())
            throw Error("conic: coefficient must be square");
    }
    for (const auto &t : lhs.scalar_terms)
        check_term_(t.first, false, 1);
    cons_.push_back({std::move(lhs), sense, std::move(label)});
}

void ConicProblem::set_objective(Direction dir, AffineExpr expr)
{
    for (const auto &[var, A] : expr.matrix_terms)
        check_term_(var, true, A.rows());
    for (const auto &t : expr.scalar_terms)
        check_term_(t.first, false, 1);
    dir_ = dir;
    obj_ = std::move(expr);
}

double ConicProblem::evaluate(const AffineExpr &e, const std::vector<MatC> &values) const
{
    double s = e.constant;
    for (const auto &[var, A] : e.matrix_terms)
        s += (A.cwiseProduct(values.at(var).transpose())).sum().real();
    for (const auto &[var, c] : e.scalar_terms)
        s += c * values.at(var)(0, 0).real();
    return s;
}

namespace
{
void dump_expr(std::ostringstream &os, const AffineExpr &e)
{
    char buf[80];
    std::snprintf(buf, sizeof(buf), "  const %.17g\n", e.constant);
    os << buf;
    for (const auto &[var, c] : e.scalar_terms)
    {
        std::snprintf(buf, sizeof(buf), "  scalar %d %.17g\n", var, c);
        os << buf;
    }
    for (const auto &[var, A] : e.matrix_terms)
    {
        os << "  matrix " << var << " " << A.rows() << "\n";
        for (Eigen::Index r = 0; r < A.rows(); ++r)
        {
            os << "   ";
            for (Eigen::Index c = 0; c < A.cols(); ++c)
            {
                std::snprintf(buf, sizeof(buf), " %.17g %.17g", A(r, c).real(), A(r, c).imag());
                os << buf;
            }
            os << "\n";
        }
    }
}

const char *sense_name(Sense s)
{
    return s == Sense::LessEq ? "<=" : (s == Sense::GreaterEq ? ">=" : "==");
}

double hermitian_defect(const MatC &A)
{
    double n = A.norm();
    return n == 0.0 ? 0.0 : (A - A.adjoint()).norm() / n;
}
} // namespace

std::string ConicProblem::dump() const
{
    std::ostringstream os;
    os << "conic-problem 1\n";
    for (std::size_t i = 0; i < vars_.size(); ++i)
    {
        const char *k = vars_[i].kind == VarKind::HermitianPsd ? "psd"
                        : vars_[i].kind == VarKind::Nonnegative ? "nonneg"
                                                                  : "free";
        os << "var " << i << " " << vars_[i].name << " " << k << " " << vars_[i].dim << "\n";
    }
    os << "objective " << (dir_ == Direction::Maximize ? "max" : "min") << "\n";
    dump_expr(os, obj_);
    for (std::size_t i = 0; i < cons_.size(); ++i)
    {
        os << "constraint " << i << " " << cons_[i].label << " " << sense_name(cons_[i].sense) << " 0\n";
        dump_expr(os, cons_[i].lhs);
    }
    return os.str();
}

MatR embed(const MatC &X)
{
    const Eigen::Index n = X.rows();
    MatR Y(2 * n, 2 * n);
    Y.topLeftCorner(n, n) = X.real();
    Y.topRightCorner(n, n) = -X.imag();
    Y.bottomLeftCorner(n, n) = X.imag();
    Y.bottomRightCorner(n, n) = X.real();
    return Y;
}

MatC deembed(const MatR &Y)
{
    const Eigen::Index n = Y.rows() / 2;
    MatR A = 0.5 * (Y.topLeftCorner(n, n) + Y.bottomRightCorner(n, n));
    MatR B = 0.5 * (Y.bottomLeftCorner(n, n) - Y.topRightCorner(n, n));
    MatC X(n, n);
    X.real() = 0.5 * (A + A.transpose());
    X.imag() = 0.5 * (B - B.transpose());
    return X;
}

RealConicForm realify(const ConicProblem &p)
{
    RealConicForm f;
    const auto &vars = p.variables();
    for (const auto &v : vars)
    {
        RealConicForm::Slot s{v.kind};
        if (v.kind == VarKind::HermitianPsd)
        {
            s.block = int(f.block_sizes.size());
            f.block_sizes.push_back(2 * v.dim);
        }
        else if (v.kind == VarKind::Nonnegative)
            s.pos = f.n_lp++;
        else
        {
            s.pos = f.n_lp++;
            s.neg = f.n_lp++;
        }
        f.slots.push_back(s);
    }
    const int n_ineq = int(std::count_if(p.constraints().begin(), p.constraints().end(),
                                         [](const Constraint &c) { return c.sense != Sense::Equal; }));
    const int first_slack = f.n_lp;
    f.n_lp += n_ineq;
    const int m = int(p.constraints().size());
    const int nb = int(f.block_sizes.size());

    f.A.assign(m, std::vector<MatR>(nb));
    f.A_lp = MatR::Zero(m, f.n_lp);
    f.b = VecR::Zero(m);

    auto lower = [&](const AffineExpr &e, std::vector<MatR> &blocks, auto &&lp_row, double scale)
    {
        for (const auto &[var, A] : e.matrix_terms)
        {
            if (hermitian_defect(A) > 1e-10)
                throw Error("realify: coefficient for '" + vars[var].name + "' is not Hermitian");
            MatC Ah = 0.5 * (A + A.adjoint());
            int b = f.slots[var].block;
            MatR Ar = 0.5 * scale * embed(Ah);
            if (blocks[b].size() == 0)
                blocks[b] = Ar;
            else
                blocks[b] += Ar;
        }
        for (const auto &[var, c] : e.scalar_terms)
        {
            const auto &s = f.slots[var];
            lp_row(s.pos) += scale * c;
            if (s.neg >= 0)
                lp_row(s.neg) -= scale * c;
        }
    };

    int slack = first_slack;
    for (int i = 0; i < m; ++i)
    {
        const Constraint &c = p.constraints()[i];
        auto row = f.A_lp.row(i);
        lower(c.lhs, f.A[i], row, 1.0);
        f.b(i) = -c.lhs.constant;
        if (c.sense == Sense::LessEq)
            f.A_lp(i, slack++) = 1.0;
        else if (c.sense == Sense::GreaterEq)
            f.A_lp(i, slack++) = -1.0;
    }

    f.obj_sign = p.direction() == Direction::Maximize ? -1.0 : 1.0;
    f.obj_offset = p.objective().constant;
    f.C.assign(nb, MatR());
    for (int b = 0; b < nb; ++b)
        f.C[b] = MatR::Zero(f.block_sizes[b], f.block_sizes[b]);
    f.c_lp = VecR::Zero(f.n_lp);
    std::vector<MatR> cb(nb);
    lower(p.objective(), cb, f.c_lp, f.obj_sign);
    for (int b = 0; b < nb; ++b)
        if (cb[b].size())
            f.C[b] = cb[b];
    return f;
}

SolveOutcome solve(const ConicProblem &p, double tol, int max_iter)
{
    const auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out;
    try
    {
        RealConicForm f = realify(p);
        detail::IpmResult r = detail::ipm_solve(f, tol, max_iter);
        out.status = r.status;
        out.stats.iterations = r.iterations;
        out.stats.primal_residual = r.pinf;
        out.stats.dual_residual = r.dinf;
        out.stats.gap = r.gap;
        const auto &vars = p.variables();
        for (std::size_t i = 0; i < vars.size(); ++i)
        {
            const auto &s = f.slots[i];
            if (vars[i].kind == VarKind::HermitianPsd)
                out.values.push_back(r.X.empty() ? MatC::Zero(vars[i].dim, vars[i].dim) : deembed(r.X[s.block]));
            else
            {
                double v = r.x_lp.size() ? r.x_lp(s.pos) : 0.0;
                if (s.neg >= 0 && r.x_lp.size())
                    v -= r.x_lp(s.neg);
                out.values.push_back(MatC::Constant(1, 1, cd(v, 0.0)));
            }
        }
        out.objective_value = p.evaluate(p.objective(), out.values);
    }
    catch (const std::exception &)
    {
        out.status = SolveStatus::NumericalFailure;
    }
    out.stats.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace risisac
