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

#include "catch_amalgamated.hpp"

#include "risisac/conic.hpp"

#include <Eigen/Eigenvalues>

#include <random>

using namespace risisac;
using Catch::Approx;

namespace
{
MatC random_hermitian(int n, std::mt19937_64 &eng)
{
    std::normal_distribution<double> g;
    MatC A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = cd(g(eng), g(eng));
    return 0.5 * (A + A.adjoint());
}

double frob_pair(const MatR &A, const MatR &B) { return (A.array() * B.array()).sum(); }
} // namespace

TEST_CASE("real embedding of Hermitian pairings")
{
    std::mt19937_64 eng(1);
    for (int rep = 0; rep < 50; ++rep)
    {
        MatC M = random_hermitian(3, eng), X = random_hermitian(3, eng);
        ConicProblem p;
        int v = p.add_psd("X", 3);
        p.add_constraint(AffineExpr().add(v, M), Sense::Equal);
        p.set_objective(Direction::Minimize, AffineExpr().add(v, MatC::Identity(3, 3)));
        RealConicForm f = realify(p);
        REQUIRE(f.block_sizes == std::vector<int>{6});
        double paired = frob_pair(f.A[0][0], embed(X));
        CHECK(std::abs(paired - (M * X).trace().real()) < 1e-12);
        CHECK(std::abs(frob_pair(f.C[0], embed(X)) - X.trace().real()) < 1e-12);
        CHECK(std::abs(0.5 * embed(X).trace() - X.trace().real()) < 1e-12);

        MatC back = deembed(embed(X));
        CHECK((back - X).norm() < 1e-15);
    }
}

TEST_CASE("scalar block embedding")
{
    MatC x = MatC::Constant(1, 1, cd(2.5, 0.0));
    MatR y = embed(x);
    REQUIRE(y.rows() == 2);
    CHECK(y(0, 0) == y(1, 1));
    CHECK(y(0, 1) == 0.0);
    CHECK(y(1, 0) == 0.0);
}

TEST_CASE("non-Hermitian data is rejected")
{
    ConicProblem p;
    int v = p.add_psd("X", 2);
    MatC A(2, 2);
    A << 1.0, cd(0.0, 1.0), cd(0.0, 1.0), 1.0;
    p.add_constraint(AffineExpr().add(v, A), Sense::LessEq);
    CHECK_THROWS_AS(realify(p), Error);
    CHECK(solve(p).status == SolveStatus::NumericalFailure);
    CHECK_THROWS(p.add_constraint(AffineExpr().add(v, MatC::Identity(2, 3)), Sense::LessEq));
    CHECK_THROWS(p.add_constraint(AffineExpr().add(v, MatC::Identity(3, 3)), Sense::LessEq));
}

TEST_CASE("saturating trace constraint")
{
    ConicProblem p;
    int v = p.add_psd("X", 2);
    p.add_constraint(AffineExpr().add(v, MatC::Identity(2, 2)).add_constant(-1.0), Sense::LessEq);
    p.set_objective(Direction::Maximize, AffineExpr().add(v, MatC::Identity(2, 2)));
    auto o = solve(p, 1e-7);
    REQUIRE(o.status == SolveStatus::Optimal);
    CHECK(o.objective_value == Approx(1.0).epsilon(1e-6));
    CHECK(o.matrix(v).trace().real() <= 1.0 + 1e-6);
}

TEST_CASE("contradictory scalar bounds are infeasible")
{
    ConicProblem p;
    int x = p.add_free("x");
    p.add_constraint(AffineExpr().add(x, 1.0).add_constant(-1.0), Sense::GreaterEq);
    p.add_constraint(AffineExpr().add(x, 1.0), Sense::LessEq);
    p.set_objective(Direction::Minimize, AffineExpr().add(x, 1.0));
    CHECK(solve(p).status == SolveStatus::Infeasible);
}

TEST_CASE("small LP with mixed variable kinds")
{
    // min x - y  s.t. x + y = 3, y <= 2, x >= 0 free y
    ConicProblem p;
    int x = p.add_nonneg("x");
    int y = p.add_free("y");
    p.add_constraint(AffineExpr().add(x, 1.0).add(y, 1.0).add_constant(-3.0), Sense::Equal);
    p.add_constraint(AffineExpr().add(y, 1.0).add_constant(-2.0), Sense::LessEq);
    p.set_objective(Direction::Minimize, AffineExpr().add(x, 1.0).add(y, -1.0));
    auto o = solve(p);
    REQUIRE(o.status == SolveStatus::Optimal);
    CHECK(o.scalar(x) == Approx(1.0).margin(1e-6));
    CHECK(o.scalar(y) == Approx(2.0).margin(1e-6));
    CHECK(o.objective_value == Approx(-1.0).margin(1e-6));
}

TEST_CASE("minimum eigenvalue SDP")
{
    std::mt19937_64 eng(7);
    for (int rep = 0; rep < 10; ++rep)
    {
        MatC A = random_hermitian(3, eng);
        ConicProblem p;
        int v = p.add_psd("X", 3);
        p.add_constraint(AffineExpr().add(v, MatC::Identity(3, 3)).add_constant(-1.0), Sense::Equal);
        p.set_objective(Direction::Minimize, AffineExpr().add(v, A));
        auto o = solve(p, 1e-9);
        REQUIRE(o.status == SolveStatus::Optimal);
        Eigen::SelfAdjointEigenSolver<MatC> es(A);
        CHECK(std::abs(o.objective_value - es.eigenvalues()(0)) < 1e-6);

        const MatC &X = o.matrix(v);
        CHECK((X - X.adjoint()).norm() <= 1e-9 * X.norm());
        Eigen::SelfAdjointEigenSolver<MatC> ex(X);
        CHECK(ex.eigenvalues()(0) >= -1e-7 * X.norm());
    }
}

TEST_CASE("complex coupling is honoured")
{
    // max Re X01 s.t. X00 = X11 = 1 gives X01 = 1, and with an imaginary weight X01 = i
    for (cd w : {cd(1.0, 0.0), cd(0.0, 1.0)})
    {
        ConicProblem p;
        int v = p.add_psd("X", 2);
        MatC E00 = MatC::Zero(2, 2), E11 = MatC::Zero(2, 2), C(2, 2);
        E00(0, 0) = 1.0;
        E11(1, 1) = 1.0;
        C << 0.0, std::conj(w), w, 0.0;
        p.add_constraint(AffineExpr().add(v, E00).add_constant(-1.0), Sense::Equal);
        p.add_constraint(AffineExpr().add(v, E11).add_constant(-1.0), Sense::Equal);
        p.set_objective(Direction::Maximize, AffineExpr().add(v, 0.5 * C));
        auto o = solve(p, 1e-9);
        REQUIRE(o.status == SolveStatus::Optimal);
        CHECK(o.objective_value == Approx(1.0).epsilon(1e-6));
        CHECK(std::abs(o.matrix(v)(1, 0) - w) < 1e-5);
    }
}

TEST_CASE("lowering and dump are deterministic")
{
    std::mt19937_64 eng(3);
    auto build = [&](std::uint64_t s)
    {
        std::mt19937_64 e(s);
        ConicProblem p;
        int v = p.add_psd("W", 3);
        int a = p.add_nonneg("alpha");
        p.add_constraint(AffineExpr().add(v, random_hermitian(3, e)).add(a, -1.0), Sense::GreaterEq, "sense");
        p.add_constraint(AffineExpr().add(v, MatC::Identity(3, 3)).add_constant(-1.0), Sense::LessEq, "power");
        p.set_objective(Direction::Maximize, AffineExpr().add(a, 1.0));
        return p;
    };
    auto p1 = build(5), p2 = build(5);
    CHECK(p1.dump() == p2.dump());
    CHECK(p1.dump().rfind("conic-problem 1\n", 0) == 0);
    auto f1 = realify(p1), f2 = realify(p2);
    CHECK(f1.A_lp == f2.A_lp);
    CHECK(f1.b == f2.b);
    CHECK(f1.A[0][0] == f2.A[0][0]);
    CHECK(f1.C[0] == f2.C[0]);
    CHECK(build(6).dump() != p1.dump());

    auto o = solve(p1);
    CHECK(o.status == SolveStatus::Optimal);
    CHECK(to_string(o.status) == "Optimal");
}

TEST_CASE("evaluate matches trace algebra")
{
    std::mt19937_64 eng(9);
    ConicProblem p;
    int v = p.add_psd("X", 2);
    int s = p.add_free("s");
    MatC A = random_hermitian(2, eng);
    MatC X = random_hermitian(2, eng);
    AffineExpr e = AffineExpr().add(v, A).add(s, 3.0).add_constant(0.5);
    double val = p.evaluate(e, {X, MatC::Constant(1, 1, cd(2.0, 0.0))});
    CHECK(val == Approx((A * X).trace().real() + 6.5).epsilon(1e-14));
}
