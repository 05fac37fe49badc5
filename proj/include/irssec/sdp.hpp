// SPDX-License-Identifier: Apache-2.0
//
// irssec: secrecy-rate optimization for multi-IRS mmWave downlinks
// Copyright (C) 2026 irssec contributors
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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "irssec/types.hpp"

namespace irssec::sdp {

// Small dense block SDPs in the form
//
//     maximize   sum_b tr(C_b X_b)
//     subject to sum_b tr(A_ib X_b)  (= or <=)  b_i,   X_b PSD,
//
// with every block real symmetric. Complex Hermitian variables enter through
// real_embed(); the builders carry the factor 1/2 of the trace identity.

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class Relation { Equal, LessEqual };

struct BlockTerm {
    std::size_t block = 0;
    SparseMatrix coeff; // symmetric, block_sizes[block] square
};

struct Constraint {
    std::vector<BlockTerm> terms;
    double rhs = 0.0;
    Relation relation = Relation::Equal;
};

struct SdpProblem {
    std::vector<int> block_sizes;
    std::vector<RMatrix> objective; // one symmetric matrix per block
    std::vector<Constraint> constraints;

    /// Appends a block with zero objective; returns its index.
    std::size_t add_block(int size);

    /// Checks symmetry and dimensions; throws DimensionError / DomainError.
    void validate() const;
};

enum class Status { Optimal, MaxIter, Infeasible };

std::string to_string(Status s);

struct SdpSolution {
    std::vector<RMatrix> X;  // PSD blocks, same order as the problem
    RVector y;               // equality-form multipliers, one per constraint
    double objective = 0.0;  // sum_b tr(C_b X_b)
    double dual_bound = 0.0; // b^T y
    // max_i |a_i(X) - b_i| / (1 + |b_i|), slacks included for inequality rows
    double primal_residual = 0.0;
    // ||A^T y - C - S|| / (1 + ||C||) with S the PSD dual slack
    double dual_residual = 0.0;
    double gap = 0.0;        // |objective - dual_bound| / (1 + |objective| + |dual_bound|)
    int iterations = 0;
    Status status = Status::MaxIter;
    std::vector<RMatrix> S;  // dual slack blocks, same order as X

    /// Weak duality check: objective <= dual_bound + tol (1 + |dual_bound|).
    bool duality_certified(double tol = 1e-5) const;
};

struct SolverOptions {
    double tol = 1e-8;
    int max_iter = 100;
    double step_fraction = 0.98; // share of the distance to the cone boundary taken per step
};

/// [[Re H, -Im H], [Im H, Re H]]. Throws DomainError unless H is Hermitian
/// to 1e-10 relative.
RMatrix real_embed(const CMatrix& H);

/// Inverse of real_embed; averages the two copies, so any real symmetric
/// 2n x 2n input maps to the Hermitian matrix of its structured part.
CMatrix complex_recover(const RMatrix& Y);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clamped to 0).
RMatrix psd_project(const RMatrix& S);

/// Infeasible-start primal-dual interior-point solve (HKM direction with a
/// Mehrotra predictor-corrector step). Inequality rows are turned into
/// equalities with a 1 x 1 slack block. Rows are normalized and the data
/// scaled to unit size before iterating; all reported quantities are in the
/// caller's scaling.
SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts = {});

/// Plain-text dump for cross-checking with external solvers:
///
///     irssec-sdp 1
///     blocks <nb> <n_1> ... <n_nb>
///     constraints <m>
///     objective
///     <nb matrices, each n_b rows of n_b numbers>
///     constraint <relation: = or <=> <rhs> <term count>
///     term <block>
///     <n_block rows of n_block numbers>
///
/// One "constraint" record per row, in order. Numbers use max_digits10.
void write_problem(std::ostream& os, const SdpProblem& problem);
SdpProblem read_problem(std::istream& is);

} // namespace irssec::sdp
