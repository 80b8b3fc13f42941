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

#include "risisac/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace risisac
{

enum class VarKind
{
    HermitianPsd,
    Nonnegative,
    Free,
};

enum class Sense
{
    LessEq,
    GreaterEq,
    Equal,
};

enum class Direction
{
    Maximize,
    Minimize,
};

enum class SolveStatus
{
    Optimal,
    Infeasible,
    NumericalFailure,
    IterationLimit,
};

std::string to_string(SolveStatus s);

struct Variable
{
    std::string name;
    VarKind kind = VarKind::Free;
    int dim = 1; // matrix order for HermitianPsd, 1 otherwise
};

// sum_i Tr[A_i X_i] + sum_j c_j x_j + constant, with Hermitian A_i.
struct AffineExpr
{
    std::vector<std::pair<int, MatC>> matrix_terms;
    std::vector<std::pair<int, double>> scalar_terms;
    double constant = 0.0;

    AffineExpr &add(int var, const MatC &coeff);
    AffineExpr &add(int var, double coeff);
    AffineExpr &add_constant(double c);
};

// lhs (sense) 0
struct Constraint
{
    AffineExpr lhs;
    Sense sense = Sense::LessEq;
    std::string label;
};

class ConicProblem
{
  public:
    int add_psd(const std::string &name, int n);
    int add_nonneg(const std::string &name);
    int add_free(const std::string &name);

    void add_constraint(AffineExpr lhs, Sense sense, std::string label = "");
    void set_objective(Direction dir, AffineExpr expr);

    const std::vector<Variable> &variables() const { return vars_; }
    const std::vector<Constraint> &constraints() const { return cons_; }
    Direction direction() const { return dir_; }
    const AffineExpr &objective() const { return obj_; }

    // Evaluates an expression at given variable values (PSD values as matrices, scalars as 1x1).
    double evaluate(const AffineExpr &e, const std::vector<MatC> &values) const;

    // Deterministic text form of the whole problem.
    std::string dump() const;

  private:
    void check_term_(int var, bool matrix, Eigen::Index rows) const;

    std::vector<Variable> vars_;
    std::vector<Constraint> cons_;
    Direction dir_ = Direction::Maximize;
    AffineExpr obj_;
};

// Real standard form: min <C, X> s.t. <A_i, X> = b_i, X in a product of PSD blocks and a nonnegative orthant.
struct RealConicForm
{
    std::vector<int> block_sizes;
    int n_lp = 0;
    std::vector<std::vector<MatR>> A; // [row][block], empty matrix when the block does not appear
    MatR A_lp;                        // rows x n_lp
    VecR b;
    std::vector<MatR> C;
    VecR c_lp;
    double obj_sign = 1.0; // objective(original) = obj_sign * <C, X> + obj_offset
    double obj_offset = 0.0;

    struct Slot
    {
        VarKind kind;
        int block = -1; // PSD block index
        int pos = -1;   // LP index (or positive part for Free)
        int neg = -1;   // negative part for Free
    };
    std::vector<Slot> slots; // one per original variable
};

// Complex-to-real lowering: X = A + iB maps to [[A, -B], [B, A]] and Tr[M X] = Tr[Mr Xr] / 2.
RealConicForm realify(const ConicProblem &p);

// Hermitian matrix from its real embedding.
MatC deembed(const MatR &Y);
MatR embed(const MatC &X);

struct SolverStats
{
    int iterations = 0;
    double runtime_s = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
};

struct SolveOutcome
{
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<MatC> values; // per variable; scalars as 1x1
    double objective_value = 0.0;
    SolverStats stats;

    const MatC &matrix(int var) const { return values.at(var); }
    double scalar(int var) const { return values.at(var)(0, 0).real(); }
};

SolveOutcome solve(const ConicProblem &p, double tol = 1e-7, int max_iter = 200);

} // namespace risisac
