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

#include "irssec/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace irssec::sdp {

namespace {

bool symmetric(const RMatrix& m, double tol = 1e-10) {
    if (m.rows() != m.cols())
        return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

using Blocks = std::vector<RMatrix>;

struct Term {
    std::size_t block = 0;
    SparseMatrix sparse;
    RMatrix dense;
    bool use_dense = false;
};

// Canonical minimization form  min <C, X>  s.t.  A(X) = b,  X PSD.
// Original blocks come first, then one 1 x 1 slack per inequality row.
// Rows have unit Frobenius norm; C and b are divided by c_scale, b_scale.
struct Canonical {
    std::vector<int> sizes;
    std::size_t user_blocks = 0;
    std::vector<std::vector<Term>> rows;
    Blocks C;
    RVector b;
    RVector row_scale;
    double c_scale = 1.0;
    double b_scale = 1.0;
};

Canonical canonicalize(const SdpProblem& p) {
    Canonical cf;
    cf.sizes = p.block_sizes;
    cf.user_blocks = p.block_sizes.size();
    for (const auto& con : p.constraints)
        if (con.relation == Relation::LessEqual)
            cf.sizes.push_back(1);

    const auto m = static_cast<Eigen::Index>(p.constraints.size());
    cf.rows.resize(static_cast<std::size_t>(m));
    cf.b.resize(m);
    cf.row_scale.resize(m);
    std::size_t slack = cf.user_blocks;
    for (Eigen::Index r = 0; r < m; ++r) {
        const Constraint& con = p.constraints[static_cast<std::size_t>(r)];
        // merge repeated blocks
        std::vector<SparseMatrix> acc(cf.sizes.size());
        for (const BlockTerm& t : con.terms) {
            if (acc[t.block].rows() == 0)
                acc[t.block] = t.coeff;
            else
                acc[t.block] += t.coeff;
        }
        if (con.relation == Relation::LessEqual) {
            SparseMatrix one(1, 1);
            one.insert(0, 0) = 1.0;
            acc[slack++] = one;
        }
        double nrm2 = 0.0;
        auto& row = cf.rows[static_cast<std::size_t>(r)];
        for (std::size_t bk = 0; bk < acc.size(); ++bk) {
            if (acc[bk].rows() == 0)
                continue;
            acc[bk].prune(0.0);
            if (acc[bk].nonZeros() == 0)
                continue;
            nrm2 += acc[bk].squaredNorm();
            Term t;
            t.block = bk;
            t.sparse = acc[bk];
            row.push_back(std::move(t));
        }
        const double scale = nrm2 > 0.0 ? 1.0 / std::sqrt(nrm2) : 1.0;
        cf.row_scale[r] = scale;
        cf.b[r] = scale * con.rhs;
        for (Term& t : row) {
            t.sparse *= scale;
            const int n = cf.sizes[t.block];
            t.use_dense = t.sparse.nonZeros() > 4 * n;
            if (t.use_dense)
                t.dense = RMatrix(t.sparse);
        }
    }

    double c_norm2 = 0.0;
    for (std::size_t bk = 0; bk < cf.sizes.size(); ++bk) {
        const int n = cf.sizes[bk];
        cf.C.push_back(bk < cf.user_blocks ? RMatrix(-p.objective[bk]) : RMatrix::Zero(n, n));
        c_norm2 += cf.C.back().squaredNorm();
    }
    cf.c_scale = std::max(1.0, std::sqrt(c_norm2));
    cf.b_scale = std::max(1.0, cf.b.norm());
    for (auto& c : cf.C)
        c /= cf.c_scale;
    cf.b /= cf.b_scale;
    return cf;
}

double inner(const Term& t, const RMatrix& G) {
    if (t.use_dense)
        return t.dense.cwiseProduct(G).sum();
    double s = 0.0;
    for (int k = 0; k < t.sparse.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(t.sparse, k); it; ++it)
            s += it.value() * G(it.row(), it.col());
    return s;
}

RVector apply_A(const Canonical& cf, const Blocks& G) {
    RVector out(static_cast<Eigen::Index>(cf.rows.size()));
    for (std::size_t r = 0; r < cf.rows.size(); ++r) {
        double s = 0.0;
        for (const Term& t : cf.rows[r])
            s += inner(t, G[t.block]);
        out[static_cast<Eigen::Index>(r)] = s;
    }
    return out;
}

Blocks apply_At(const Canonical& cf, const RVector& y) {
    Blocks out;
    for (int n : cf.sizes)
        out.push_back(RMatrix::Zero(n, n));
    for (std::size_t r = 0; r < cf.rows.size(); ++r) {
        const double yr = y[static_cast<Eigen::Index>(r)];
        for (const Term& t : cf.rows[r]) {
            if (t.use_dense)
                out[t.block] += yr * t.dense;
            else
                out[t.block] += yr * t.sparse;
        }
    }
    return out;
}

double frob_inner(const Blocks& a, const Blocks& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k].cwiseProduct(b[k]).sum();
    return s;
}

// Largest alpha in (0, cap] with X + alpha dX PSD, per block.
double max_step(const Blocks& X, const Blocks& dX, double cap) {
    double alpha = cap;
    Eigen::GeneralizedSelfAdjointEigenSolver<RMatrix> ges;
    for (std::size_t k = 0; k < X.size(); ++k) {
        double lam_min = 0.0;
        if (X[k].rows() == 1) {
            lam_min = dX[k](0, 0) / X[k](0, 0);
        } else {
            ges.compute(dX[k], X[k], Eigen::EigenvaluesOnly);
            if (ges.info() != Eigen::Success)
                return 0.0;
            lam_min = ges.eigenvalues().minCoeff();
        }
        if (lam_min < 0.0)
            alpha = std::min(alpha, -1.0 / lam_min);
    }
    return alpha;
}

bool invert_pd(const Blocks& Z, Blocks& Zinv) {
    Zinv.resize(Z.size());
    for (std::size_t k = 0; k < Z.size(); ++k) {
        Eigen::LLT<RMatrix> llt(Z[k]);
        if (llt.info() != Eigen::Success)
            return false;
        Zinv[k] = llt.solve(RMatrix::Identity(Z[k].rows(), Z[k].cols()));
        Zinv[k] = 0.5 * (Zinv[k] + Zinv[k].transpose());
    }
    return true;
}

// Schur complement M_ij = <A_i, X A_j Z^-1>.
RMatrix schur(const Canonical& cf, const Blocks& X, const Blocks& Zinv) {
    const auto m = static_cast<Eigen::Index>(cf.rows.size());
    RMatrix M = RMatrix::Zero(m, m);
    std::vector<RMatrix> B(cf.sizes.size());
    std::vector<char> touched(cf.sizes.size());
    for (Eigen::Index j = 0; j < m; ++j) {
        std::fill(touched.begin(), touched.end(), 0);
        for (const Term& t : cf.rows[static_cast<std::size_t>(j)]) {
            const RMatrix& Xb = X[t.block];
            const RMatrix& Zb = Zinv[t.block];
            if (t.use_dense) {
                B[t.block].noalias() = Xb * (t.dense * Zb);
            } else {
                B[t.block] = RMatrix::Zero(Xb.rows(), Xb.cols());
                for (int k = 0; k < t.sparse.outerSize(); ++k)
                    for (SparseMatrix::InnerIterator it(t.sparse, k); it; ++it)
                        B[t.block].noalias() += it.value() * Xb.col(it.row()) * Zb.row(it.col());
            }
            touched[t.block] = 1;
        }
        for (Eigen::Index i = 0; i <= j; ++i) {
            double s = 0.0;
            for (const Term& t : cf.rows[static_cast<std::size_t>(i)])
                if (touched[t.block])
                    s += inner(t, B[t.block]);
            M(i, j) = s;
            M(j, i) = s;
        }
    }
    return M;
}

} // namespace

std::size_t SdpProblem::add_block(int size) {
    block_sizes.push_back(size);
    objective.push_back(RMatrix::Zero(size, size));
    return block_sizes.size() - 1;
}

void SdpProblem::validate() const {
    if (block_sizes.empty())
        throw DimensionError("SDP has no blocks");
    if (objective.size() != block_sizes.size())
        throw DimensionError("objective block count differs from block list");
    if (constraints.empty())
        throw DimensionError("SDP needs at least one constraint");
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        if (block_sizes[b] < 1)
            throw DimensionError("block sizes must be >= 1");
        if (objective[b].rows() != block_sizes[b] || !symmetric(objective[b]))
            throw DimensionError("objective block is not a symmetric matrix of the block size");
    }
    for (const auto& con : constraints) {
        if (!std::isfinite(con.rhs))
            throw DomainError("non-finite constraint right-hand side");
        for (const auto& t : con.terms) {
            if (t.block >= block_sizes.size())
                throw DimensionError("constraint references a missing block");
            const int n = block_sizes[t.block];
            if (t.coeff.rows() != n || t.coeff.cols() != n)
                throw DimensionError("constraint coefficient has the wrong size");
            if (!symmetric(RMatrix(t.coeff)))
                throw DimensionError("constraint coefficient is not symmetric");
        }
    }
}

std::string to_string(Status s) {
    switch (s) {
    case Status::Optimal:
        return "optimal";
    case Status::MaxIter:
        return "max_iter";
    case Status::Infeasible:
        return "infeasible";
    }
    return "unknown";
}

bool SdpSolution::duality_certified(double tol) const {
    return objective <= dual_bound + tol * (1.0 + std::abs(dual_bound));
}

RMatrix real_embed(const CMatrix& H) {
    if (H.rows() != H.cols())
        throw DomainError("real_embed needs a square matrix");
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if (H.size() > 0 && (H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw DomainError("real_embed needs a Hermitian matrix");
    const auto n = H.rows();
    RMatrix Y(2 * n, 2 * n);
    Y.topLeftCorner(n, n) = H.real();
    Y.bottomRightCorner(n, n) = H.real();
    Y.topRightCorner(n, n) = -H.imag();
    Y.bottomLeftCorner(n, n) = H.imag();
    return Y;
}

CMatrix complex_recover(const RMatrix& Y) {
    if (Y.rows() != Y.cols() || Y.rows() % 2 != 0)
        throw DimensionError("complex_recover needs an even square matrix");
    const auto n = Y.rows() / 2;
    const RMatrix re = 0.5 * (Y.topLeftCorner(n, n) + Y.bottomRightCorner(n, n));
    const RMatrix im = 0.5 * (Y.bottomLeftCorner(n, n) - Y.topRightCorner(n, n));
    CMatrix H(n, n);
    H.real() = re;
    H.imag() = im;
    return 0.5 * (H + H.adjoint());
}

RMatrix psd_project(const RMatrix& S) {
    if (!symmetric(S, 1e-9))
        throw DomainError("psd_project needs a symmetric matrix");
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(S);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed in PSD projection");
    const RVector lam = eig.eigenvalues().cwiseMax(0.0);
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
}

SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts) {
    problem.validate();
    if (!(opts.tol > 0.0) || opts.max_iter < 1 || !(opts.step_fraction > 0.0 && opts.step_fraction < 1.0))
        throw DomainError("invalid solver options");

    const Canonical cf = canonicalize(problem);
    const auto m = static_cast<Eigen::Index>(cf.rows.size());
    const std::size_t nb = cf.sizes.size();
    double n_total = 0.0;
    for (int n : cf.sizes)
        n_total += n;

    SdpSolution sol;
    const auto finish_blocks = [&](const Blocks& X, const RVector& y, const Blocks& Z) {
        sol.X.clear();
        sol.S.clear();
        for (std::size_t k = 0; k < cf.user_blocks; ++k) {
            sol.X.push_back(cf.b_scale * X[k]);
            sol.S.push_back(cf.c_scale * Z[k]);
        }
        // max form: y_max = -y_min, undo the row scaling
        sol.y = -cf.c_scale * cf.row_scale.cwiseProduct(y);
    };

    // Dependent rows with an inconsistent right-hand side leave no feasible point.
    RMatrix gram(m, m);
    {
        Blocks I;
        for (int n : cf.sizes)
            I.push_back(RMatrix::Identity(n, n));
        gram = schur(cf, I, I);
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> ge(gram);
    const double lam_max = std::max(ge.eigenvalues().maxCoeff(), 0.0);
    RVector inv_lam = RVector::Zero(m);
    bool full_rank = true;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (ge.eigenvalues()[i] > 1e-12 * lam_max)
            inv_lam[i] = 1.0 / ge.eigenvalues()[i];
        else
            full_rank = false;
    }
    if (!full_rank) {
        const RMatrix& Q = ge.eigenvectors();
        const RVector proj = gram * (Q * inv_lam.asDiagonal() * Q.transpose() * cf.b);
        if ((proj - cf.b).norm() > 1e-9 * (1.0 + cf.b.norm())) {
            sol.status = Status::Infeasible;
            sol.primal_residual = std::numeric_limits<double>::infinity();
            Blocks zero;
            for (int n : cf.sizes)
                zero.push_back(RMatrix::Zero(n, n));
            finish_blocks(zero, RVector::Zero(m), zero);
            return sol;
        }
    }

    // Starting point: scaled identities.
    double x0 = 10.0;
    double z0 = 10.0;
    for (std::size_t k = 0; k < nb; ++k) {
        const double n = cf.sizes[k];
        x0 = std::max(x0, std::sqrt(n));
        z0 = std::max({z0, std::sqrt(n), cf.C[k].norm()});
    }
    Blocks X, Z, Zinv;
    for (int n : cf.sizes) {
        X.push_back(x0 * RMatrix::Identity(n, n));
        Z.push_back(z0 * RMatrix::Identity(n, n));
    }
    RVector y = RVector::Zero(m);

    const double c_norm = std::sqrt(frob_inner(cf.C, cf.C)) * cf.c_scale;
    const auto assess = [&](const RVector& AX, const Blocks& Rd) {
        double primal = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double b_orig = cf.b[i] * cf.b_scale / cf.row_scale[i];
            const double viol = std::abs(AX[i] - cf.b[i]) * cf.b_scale / cf.row_scale[i];
            primal = std::max(primal, viol / (1.0 + std::abs(b_orig)));
        }
        // Rd lives in the scaled min form; user blocks only carry C.
        double rd2 = 0.0;
        for (std::size_t k = 0; k < nb; ++k)
            rd2 += Rd[k].squaredNorm();
        sol.primal_residual = primal;
        sol.dual_residual = std::sqrt(rd2) * cf.c_scale / (1.0 + c_norm);
        sol.objective = -frob_inner(cf.C, X) * cf.c_scale * cf.b_scale;
        sol.dual_bound = -cf.b.dot(y) * cf.c_scale * cf.b_scale;
        sol.gap = std::abs(sol.objective - sol.dual_bound) /
                  (1.0 + std::abs(sol.objective) + std::abs(sol.dual_bound));
        return primal <= opts.tol && sol.dual_residual <= opts.tol && sol.gap <= opts.tol;
    };

    bool converged = false;
    int iter = 0;
    for (iter = 0; iter <= opts.max_iter; ++iter) {
        const RVector AX = apply_A(cf, X);
        const RVector Rp = cf.b - AX;
        Blocks Rd = apply_At(cf, y);
        for (std::size_t k = 0; k < nb; ++k)
            Rd[k] = cf.C[k] - Z[k] - Rd[k];
        if (assess(AX, Rd)) {
            converged = true;
            break;
        }
        if (iter == opts.max_iter || !invert_pd(Z, Zinv))
            break;

        const double mu = frob_inner(X, Z) / n_total;
        const RMatrix M = schur(cf, X, Zinv);
        Eigen::LLT<RMatrix> llt(M);
        Eigen::LDLT<RMatrix> ldlt;
        const bool use_llt = llt.info() == Eigen::Success;
        if (!use_llt)
            ldlt.compute(M);

        // G = sigma mu Z^-1 - X - X Rd Z^-1 - extra; direction solves
        // M dy = Rp - A(G), dZ = Rd - A^T dy, dX = G + X A^T dy Z^-1.
        Blocks XRdZ(nb);
        for (std::size_t k = 0; k < nb; ++k)
            XRdZ[k].noalias() = X[k] * Rd[k] * Zinv[k];
        const auto direction = [&](double sigma_mu, const Blocks* extra, Blocks& dX, RVector& dy,
                                   Blocks& dZ) {
            Blocks G(nb);
            for (std::size_t k = 0; k < nb; ++k) {
                G[k] = sigma_mu * Zinv[k] - X[k] - XRdZ[k];
                if (extra)
                    G[k] -= (*extra)[k];
            }
            const RVector rhs = Rp - apply_A(cf, G);
            dy = use_llt ? RVector(llt.solve(rhs)) : RVector(ldlt.solve(rhs));
            const Blocks Aty = apply_At(cf, dy);
            dZ.resize(nb);
            dX.resize(nb);
            for (std::size_t k = 0; k < nb; ++k) {
                dZ[k] = Rd[k] - Aty[k];
                RMatrix d = G[k] + X[k] * Aty[k] * Zinv[k];
                dX[k] = 0.5 * (d + d.transpose());
            }
        };

        Blocks dXp, dZp, dX, dZ;
        RVector dyp, dy;
        direction(0.0, nullptr, dXp, dyp, dZp);
        const double ap = max_step(X, dXp, 1.0);
        const double ad = max_step(Z, dZp, 1.0);
        double mu_aff = 0.0;
        for (std::size_t k = 0; k < nb; ++k)
            mu_aff += (X[k] + ap * dXp[k]).cwiseProduct(Z[k] + ad * dZp[k]).sum();
        mu_aff /= n_total;
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

        Blocks corr(nb);
        for (std::size_t k = 0; k < nb; ++k)
            corr[k].noalias() = dXp[k] * dZp[k] * Zinv[k];
        direction(sigma * mu, &corr, dX, dy, dZ);

        const double tau = opts.step_fraction;
        const double step_p = max_step(X, dX, 1.0 / tau) * tau;
        const double step_d = max_step(Z, dZ, 1.0 / tau) * tau;
        if (step_p < 1e-12 && step_d < 1e-12)
            break;
        for (std::size_t k = 0; k < nb; ++k) {
            X[k] += step_p * dX[k];
            Z[k] += step_d * dZ[k];
        }
        y += step_d * dy;
    }

    sol.iterations = std::min(iter, opts.max_iter);
    sol.status = converged ? Status::Optimal : Status::MaxIter;
    finish_blocks(X, y, Z);
    return sol;
}

void write_problem(std::ostream& os, const SdpProblem& p) {
    const auto prec = os.precision(std::numeric_limits<double>::max_digits10);
    const auto write_matrix = [&os](const RMatrix& m) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                os << (j ? " " : "") << m(i, j);
            os << '\n';
        }
    };
    os << "irssec-sdp 1\nblocks " << p.block_sizes.size();
    for (int s : p.block_sizes)
        os << ' ' << s;
    os << "\nconstraints " << p.constraints.size() << "\nobjective\n";
    for (const auto& c : p.objective)
        write_matrix(c);
    for (const auto& con : p.constraints) {
        os << "constraint " << (con.relation == Relation::Equal ? "=" : "<=") << ' ' << con.rhs
           << ' ' << con.terms.size() << '\n';
        for (const auto& t : con.terms) {
            os << "term " << t.block << '\n';
            write_matrix(RMatrix(t.coeff));
        }
    }
    os.precision(prec);
}

SdpProblem read_problem(std::istream& is) {
    const auto expect = [&is](const std::string& word) {
        std::string tok;
        if (!(is >> tok) || tok != word)
            throw std::runtime_error("SDP dump: expected '" + word + "', got '" + tok + "'");
    };
    const auto read_matrix = [&is](int n) {
        RMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(is >> m(i, j)))
                    throw std::runtime_error("SDP dump: truncated matrix");
        return m;
    };
    expect("irssec-sdp");
    int version = 0;
    is >> version;
    if (version != 1)
        throw std::runtime_error("SDP dump: unsupported version");
    expect("blocks");
    std::size_t nb = 0;
    is >> nb;
    SdpProblem p;
    for (std::size_t b = 0; b < nb; ++b) {
        int s = 0;
        is >> s;
        p.block_sizes.push_back(s);
    }
    expect("constraints");
    std::size_t m = 0;
    is >> m;
    expect("objective");
    for (int s : p.block_sizes)
        p.objective.push_back(read_matrix(s));
    for (std::size_t i = 0; i < m; ++i) {
        expect("constraint");
        std::string rel;
        Constraint con;
        std::size_t nterms = 0;
        is >> rel >> con.rhs >> nterms;
        if (rel != "=" && rel != "<=")
            throw std::runtime_error("SDP dump: bad relation '" + rel + "'");
        con.relation = rel == "=" ? Relation::Equal : Relation::LessEqual;
        for (std::size_t t = 0; t < nterms; ++t) {
            expect("term");
            BlockTerm term;
            is >> term.block;
            if (term.block >= p.block_sizes.size())
                throw std::runtime_error("SDP dump: term references a missing block");
            term.coeff = read_matrix(p.block_sizes[term.block]).sparseView();
            con.terms.push_back(std::move(term));
        }
        p.constraints.push_back(std::move(con));
    }
    if (!is)
        throw std::runtime_error("SDP dump: read error");
    return p;
}

} // namespace irssec::sdp
