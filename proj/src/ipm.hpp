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

#include "risisac/conic.hpp"

namespace risisac::detail
{

struct IpmResult
{
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<MatR> X;
    VecR x_lp;
    VecR y;
    int iterations = 0;
    double pinf = 0.0, dinf = 0.0, gap = 0.0;
    double pobj = 0.0;
};

// Primal-dual path following (HKM direction, Mehrotra predictor-corrector).
IpmResult ipm_solve(const RealConicForm &f, double tol, int max_iter);

} // namespace risisac::detail
