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

#include "ipm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <limits>

namespace risisac::detail
{

namespace
{

struct Triplet
{
    int r, c;
    double v;
};

// One constraint row restricted to one PSD block.
struct RowBlock
{
    int row = -1;
    MatR dense;
    std::vector<Triplet> sparse;
    bool is_sparse = false;
};

struct Problem
{
    int m = 0;
    std::vector<int> n;                      // block sizes
    std::vector<std::vector<RowBlock>> rows; // per block, rows touching it
    MatR A_lp;                               // m x n_lp
    VecR b;
    std::vector<MatR> C;
    VecR c;
};

struct Point
{
    std::vector<MatR> X;
    VecR x;
};

double inner(const Point &a, const Point &b)
{
    double s = a.x.dot(b.x);
    for (std::size_t k = 0; k < a.X.size(); ++k)
        s += a.X[k].cwiseProduct(b.X[k]).sum();
    return s;
}

double dot_block(const RowBlock &rb, const MatR &G)
{
    if (rb.is_sparse)
    {
        double s = 0.0;
        for (const auto &t : rb.sparse)
            s += t.v * G(t.r, t.c);
        return s;
    }
    return rb.dense.cwiseProduct(G).sum();
}

VecR apply_A(const Problem &P, const Point &X)
{
    VecR out = P.A_lp * X.x;
    for (std::size_t k = 0; k < P.n.size(); ++k)
        for (const auto &rb : P.rows[k])
            out(rb.row) += dot_block(rb, X.X[k]);
    return out;
}

Point apply_AT(const Problem &P, const VecR &y)
{
    Point out;
    out.x = P.A_lp.transpose() * y;
    for (std::size_t k = 0; k < P.n.size(); ++k)
    {
        MatR S = MatR::Zero(P.n[k], P.n[k]);
        for (const auto &rb : P.rows[k])
        {
            if (rb.is_sparse)
                for (const auto &t : rb.sparse)
                    S(t.r, t.c) += y(rb.row) * t.v;
            else
                S += y(rb.row) * rb.dense;
        }
        out.X.push_back(S);
    }
    return out;
}

MatR sym(const MatR &A) { return 0.5 * (A + A.transpose()); }

// Largest alpha with X + alpha dX >= 0, given X = L L^T.
double max_step_psd(const MatR &L, const MatR &dX)
{
    const int n = int(L.rows());
    MatR Li = L.triangularView<Eigen::Lower>().solve(MatR::Identity(n, n));
    MatR M = sym(Li * dX * Li.transpose());
    Eigen::SelfAdjointEigenSolver<MatR> es(M, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues()(0);
    return lmin < 0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

double max_step_lp(const VecR &x, const VecR &dx)
{
    double a = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (dx(i) < 0)
            a = std::min(a, -x(i) / dx(i));
    return a;
}

double max_eig(const MatR &S)
{
    if (S.rows() == 0)
        return -std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<MatR> es(sym(S), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(S.rows() - 1);
}

bool chol(const MatR &A, MatR &L)
{
    Eigen::LLT<MatR> llt(A);
    if (llt.info() != Eigen::Success)
        return false;
    L = llt.matrixL();
    return L.allFinite();
}

} // namespace

IpmResult ipm_solve(const RealConicForm &f, double tol, int max_iter)
{
    IpmResult res;
    const int nb = int(f.block_sizes.size());
    const int n_lp = f.n_lp;

    // Row equilibration; all-zero rows are either trivially satisfied or infeasible.
    std::vector<int> keep;
    std::vector<double> scale;
    for (int i = 0; i < int(f.b.size()); ++i)
    {
        double s = f.A_lp.row(i).squaredNorm();
        for (int k = 0; k < nb; ++k)
            if (f.A[i][k].size())
                s += f.A[i][k].squaredNorm();
        s = std::sqrt(s);
        if (s == 0.0)
        {
            if (std::abs(f.b(i)) > tol)
            {
                res.status = SolveStatus::Infeasible;
                return res;
            }
            continue;
        }
        keep.push_back(i);
        scale.push_back(1.0 / s);
    }

    Problem P;
    P.m = int(keep.size());
    P.n = f.block_sizes;
    P.rows.assign(nb, {});
    P.A_lp = MatR::Zero(P.m, n_lp);
    P.b = VecR::Zero(P.m);
    for (int r = 0; r < P.m; ++r)
    {
        const int i = keep[r];
        P.b(r) = f.b(i) * scale[r];
        if (n_lp)
            P.A_lp.row(r) = f.A_lp.row(i) * scale[r];
        for (int k = 0; k < nb; ++k)
        {
            if (f.A[i][k].size() == 0)
                continue;
            RowBlock rb;
            rb.row = r;
            rb.dense = sym(f.A[i][k]) * scale[r];
            int nnz = 0;
            for (Eigen::Index a = 0; a < rb.dense.rows(); ++a)
                for (Eigen::Index c = 0; c < rb.dense.cols(); ++c)
                    if (rb.dense(a, c) != 0.0)
                        ++nnz;
            if (nnz == 0)
                continue;
            if (nnz <= 2 * P.n[k])
            {
                rb.is_sparse = true;
                for (Eigen::Index a = 0; a < rb.dense.rows(); ++a)
                    for (Eigen::Index c = 0; c < rb.dense.cols(); ++c)
                        if (rb.dense(a, c) != 0.0)
                            rb.sparse.push_back({int(a), int(c), rb.dense(a, c)});
            }
            P.rows[k].push_back(std::move(rb));
        }
    }
    double cnorm = f.c_lp.squaredNorm();
    for (int k = 0; k < nb; ++k)
        cnorm += f.C[k].squaredNorm();
    cnorm = std::sqrt(cnorm);
    const double cscale = cnorm > 0 ? 1.0 / cnorm : 1.0;
    for (int k = 0; k < nb; ++k)
        P.C.push_back(sym(f.C[k]) * cscale);
    P.c = f.c_lp * cscale;

    const int m = P.m;
    double nu = n_lp;
    for (int k = 0; k < nb; ++k)
        nu += P.n[k];
    const double bnorm = P.b.norm();
    const double Cnorm = cnorm > 0 ? 1.0 : 0.0;

    // Starting point.
    Point X, Z;
    VecR y = VecR::Zero(m);
    double bmax = P.b.size() ? P.b.cwiseAbs().maxCoeff() : 0.0;
    for (int k = 0; k < nb; ++k)
    {
        const double n = P.n[k];
        double xi = std::max({10.0, std::sqrt(n), n * (1.0 + bmax)});
        double eta = std::max({10.0, std::sqrt(n), 1.0 + P.C[k].norm()});
        X.X.push_back(xi * MatR::Identity(P.n[k], P.n[k]));
        Z.X.push_back(eta * MatR::Identity(P.n[k], P.n[k]));
    }
    {
        double xi = std::max(10.0, 1.0 + bmax) * std::max(1.0, std::sqrt(double(n_lp)));
        double eta = std::max(10.0, 1.0 + P.c.norm());
        X.x = VecR::Constant(n_lp, xi);
        Z.x = VecR::Constant(n_lp, eta);
    }

    auto finish = [&](SolveStatus st)
    {
        res.status = st;
        res.X = X.X;
        res.x_lp = X.x;
        res.y = y;
        double pobj = f.c_lp.dot(X.x);
        for (int k = 0; k < nb; ++k)
            pobj += f.C[k].cwiseProduct(X.X[k]).sum();
        res.pobj = pobj;
        return res;
    };

    int stalls = 0;
    for (int it = 0; it < max_iter; ++it)
    {
        res.iterations = it;
        // Factorizations.
        std::vector<MatR> LX(nb), Zi(nb);
        for (int k = 0; k < nb; ++k)
        {
            MatR LZ;
            if (!chol(X.X[k], LX[k]) || !chol(Z.X[k], LZ))
                return finish(SolveStatus::NumericalFailure);
            MatR LZi = LZ.triangularView<Eigen::Lower>().solve(MatR::Identity(P.n[k], P.n[k]));
            Zi[k] = LZi.transpose() * LZi;
        }

        const VecR rp = P.b - apply_A(P, X);
        Point ATy = apply_AT(P, y);
        Point Rd;
        Rd.x = P.c - Z.x - ATy.x;
        for (int k = 0; k < nb; ++k)
            Rd.X.push_back(P.C[k] - Z.X[k] - ATy.X[k]);
        const double mu = inner(X, Z) / nu;
        double pobj = P.c.dot(X.x), dobj = P.b.dot(y);
        for (int k = 0; k < nb; ++k)
            pobj += P.C[k].cwiseProduct(X.X[k]).sum();
        res.pinf = rp.norm() / (1.0 + bnorm);
        res.dinf = std::sqrt(inner(Rd, Rd)) / (1.0 + Cnorm);
        res.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        if (res.pinf < tol && res.dinf < tol && res.gap < tol)
            return finish(SolveStatus::Optimal);

        // Certificates of primal infeasibility and unboundedness.
        if (dobj > 0.0 && it > 2)
        {
            Point S = apply_AT(P, y / dobj);
            double worst = S.x.size() ? S.x.maxCoeff() : -1.0;
            for (int k = 0; k < nb; ++k)
                worst = std::max(worst, max_eig(S.X[k]));
            if (worst < 1e-8)
                return finish(SolveStatus::Infeasible);
        }
        if (pobj < -1e10 * (1.0 + bnorm))
            return finish(SolveStatus::NumericalFailure);

        // Schur complement.
        MatR M = P.A_lp * (X.x.cwiseQuotient(Z.x)).asDiagonal() * P.A_lp.transpose();
        for (int k = 0; k < nb; ++k)
        {
            const auto &rows = P.rows[k];
            for (std::size_t a = 0; a < rows.size(); ++a)
            {
                MatR G;
                if (rows[a].is_sparse)
                {
                    G = MatR::Zero(P.n[k], P.n[k]);
                    for (const auto &t : rows[a].sparse)
                        G.noalias() += t.v * X.X[k].col(t.r) * Zi[k].row(t.c);
                }
                else
                    G = X.X[k] * rows[a].dense * Zi[k];
                for (std::size_t c = a; c < rows.size(); ++c)
                {
                    double v = dot_block(rows[c], G);
                    M(rows[a].row, rows[c].row) += v;
                    if (c != a)
                        M(rows[c].row, rows[a].row) += v;
                }
            }
        }
        M = sym(M);
        Eigen::LLT<MatR> llt;
        {
            double reg = 0.0;
            const double dmax = std::max(1e-300, M.diagonal().cwiseAbs().maxCoeff());
            for (int attempt = 0; attempt < 8; ++attempt)
            {
                MatR Mr = M;
                Mr.diagonal().array() += reg;
                llt.compute(Mr);
                if (llt.info() == Eigen::Success)
                    break;
                reg = reg == 0.0 ? 1e-14 * dmax : reg * 100.0;
            }
            if (llt.info() != Eigen::Success)
                return finish(SolveStatus::NumericalFailure);
        }

        // Direction for a given complementarity target: RcZi = Rc Z^{-1} (per block) and rc (LP, already divided by z).
        auto direction = [&](const std::vector<MatR> &RcZi, const VecR &rcz, Point &dX, VecR &dy, Point &dZ)
        {
            Point T;
            T.x = rcz - X.x.cwiseProduct(Rd.x).cwiseQuotient(Z.x);
            for (int k = 0; k < nb; ++k)
                T.X.push_back(RcZi[k] - X.X[k] * Rd.X[k] * Zi[k]);
            VecR rhs = rp - apply_A(P, T);
            dy = llt.solve(rhs);
            Point ATdy = apply_AT(P, dy);
            dZ.x = Rd.x - ATdy.x;
            dX.x = rcz - X.x.cwiseProduct(dZ.x).cwiseQuotient(Z.x);
            dZ.X.clear();
            dX.X.clear();
            for (int k = 0; k < nb; ++k)
            {
                dZ.X.push_back(sym(Rd.X[k] - ATdy.X[k]));
                dX.X.push_back(sym(RcZi[k] - X.X[k] * dZ.X.back() * Zi[k]));
            }
        };
        auto steps = [&](const Point &dX, const Point &dZ, double &ap, double &ad)
        {
            ap = max_step_lp(X.x, dX.x);
            ad = max_step_lp(Z.x, dZ.x);
            for (int k = 0; k < nb; ++k)
            {
                ap = std::min(ap, max_step_psd(LX[k], dX.X[k]));
                MatR LZ;
                chol(Z.X[k], LZ);
                ad = std::min(ad, max_step_psd(LZ, dZ.X[k]));
            }
        };

        // Predictor.
        std::vector<MatR> RcZi(nb);
        for (int k = 0; k < nb; ++k)
            RcZi[k] = -X.X[k];
        VecR rcz = -X.x;
        Point dXa, dZa;
        VecR dya;
        direction(RcZi, rcz, dXa, dya, dZa);
        double ap, ad;
        steps(dXa, dZa, ap, ad);
        ap = std::min(1.0, ap);
        ad = std::min(1.0, ad);
        Point Xa = X, Za = Z;
        Xa.x += ap * dXa.x;
        Za.x += ad * dZa.x;
        for (int k = 0; k < nb; ++k)
        {
            Xa.X[k] += ap * dXa.X[k];
            Za.X[k] += ad * dZa.X[k];
        }
        const double mu_aff = inner(Xa, Za) / nu;
        double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3);
        sigma = std::clamp(sigma, 0.0, 1.0);

        // Corrector.
        for (int k = 0; k < nb; ++k)
            RcZi[k] = sigma * mu * Zi[k] - X.X[k] - dXa.X[k] * dZa.X[k] * Zi[k];
        rcz = (VecR::Constant(n_lp, sigma * mu) - dXa.x.cwiseProduct(dZa.x)).cwiseQuotient(Z.x) - X.x;
        Point dX, dZ;
        VecR dy;
        direction(RcZi, rcz, dX, dy, dZ);
        double apm, adm;
        steps(dX, dZ, apm, adm);
        const double gamma = 0.9 + 0.09 * std::min(ap, ad);
        const double sp = std::min(1.0, gamma * apm);
        const double sd = std::min(1.0, gamma * adm);
        if (!(sp > 0) || !(sd > 0) || !std::isfinite(sp) || !std::isfinite(sd))
            return finish(SolveStatus::NumericalFailure);

        X.x += sp * dX.x;
        Z.x += sd * dZ.x;
        for (int k = 0; k < nb; ++k)
        {
            X.X[k] = sym(X.X[k] + sp * dX.X[k]);
            Z.X[k] = sym(Z.X[k] + sd * dZ.X[k]);
        }
        y += sd * dy;

        stalls = (sp < 1e-9 && sd < 1e-9) ? stalls + 1 : 0;
        if (stalls >= 3)
            return finish(SolveStatus::NumericalFailure);
    }
    res.iterations = max_iter;
    return finish(SolveStatus::IterationLimit);
}

} // namespace risisac::detail
