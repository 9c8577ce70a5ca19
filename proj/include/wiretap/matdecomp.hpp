// SPDX-License-Identifier: Apache-2.0
//
// wiretap-lsl: large-system secrecy rates of correlated MIMO wiretap channels
// Copyright (C) 2026 The wiretap-lsl authors
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

#ifndef WIRETAP_MATDECOMP_HPP
#define WIRETAP_MATDECOMP_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace wiretap
{
    using Complex = std::complex<double>;
    using Index = Eigen::Index;
    using ComplexMatrix = Eigen::MatrixXcd; // column-major, project-wide
    using ComplexVector = Eigen::VectorXcd;
    using RealVector = Eigen::VectorXd;

    // Eigenvalues at or above this floor are treated as zero before a square root.
    inline constexpr double psd_floor = -1e-12;

    // Stacked-matrix rank tolerance used by gsvd (relative to the largest singular value).
    inline constexpr double gsvd_rank_tolerance = 1e-10;

    inline bool all_finite(const ComplexMatrix &x)
    {
        return x.allFinite();
    }

    // Hermitian matrix with exact conjugate symmetry.
    // The input is replaced by (X + X^H) / 2, so entry (a,b) is bitwise conj of entry (b,a)
    // and the diagonal is exactly real.
    class HermitianMatrix
    {
    public:
        HermitianMatrix() = default;

        explicit HermitianMatrix(const ComplexMatrix &x)
        {
            if (x.rows() != x.cols())
                throw DimensionMismatch("HermitianMatrix: input is " + std::to_string(x.rows()) + "x" +
                                        std::to_string(x.cols()) + ", expected square");
            if (!all_finite(x))
                throw InvalidArgument("HermitianMatrix: input contains NaN or Inf");
            m_ = (x + x.adjoint()) * 0.5;
        }

        static HermitianMatrix identity(Index n)
        {
            return HermitianMatrix(ComplexMatrix::Identity(n, n));
        }

        static HermitianMatrix zero(Index n)
        {
            return HermitianMatrix(ComplexMatrix::Zero(n, n));
        }

        static HermitianMatrix diagonal(const RealVector &d)
        {
            return HermitianMatrix(ComplexMatrix(d.cast<Complex>().asDiagonal()));
        }

        Index dim() const { return m_.rows(); }
        const ComplexMatrix &matrix() const { return m_; }
        Complex operator()(Index r, Index c) const { return m_(r, c); }
        double trace() const { return m_.trace().real(); }

    private:
        ComplexMatrix m_;
    };

    // Hermitian eigendecomposition, eigenvalues ascending.
    struct EigenDecomposition
    {
        RealVector values;
        ComplexMatrix vectors;
    };

    inline EigenDecomposition eigh(const HermitianMatrix &a)
    {
        if (a.dim() == 0)
            return {RealVector(), ComplexMatrix()};
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success)
            throw ConvergenceFailure("eigh: Hermitian eigensolver did not converge");
        return {solver.eigenvalues(), solver.eigenvectors()};
    }

    // ln det(A) for Hermitian positive definite A, via a Cholesky factorization A = L L^H.
    inline double logdet_hpd(const HermitianMatrix &a)
    {
        const Index n = a.dim();
        ComplexMatrix l = ComplexMatrix::Zero(n, n);
        const ComplexMatrix &x = a.matrix();
        double logdet = 0.0;
        for (Index j = 0; j < n; ++j)
        {
            double pivot = x(j, j).real();
            if (j > 0)
                pivot -= l.row(j).head(j).squaredNorm();
            if (!(pivot > 0.0) || !std::isfinite(pivot))
                throw NotPositiveDefinite("logdet_hpd: non-positive pivot " + std::to_string(pivot) +
                                          " at column " + std::to_string(j));
            const double ljj = std::sqrt(pivot);
            l(j, j) = ljj;
            logdet += std::log(ljj);
            for (Index i = j + 1; i < n; ++i)
            {
                Complex acc = x(i, j);
                if (j > 0)
                    acc -= l.row(j).head(j).dot(l.row(i).head(j)); // sum_k L_ik conj(L_jk)
                l(i, j) = acc / ljj;
            }
        }
        return 2.0 * logdet;
    }

    // Principal square root of a PSD matrix. Eigenvalues in [psd_floor, 0) are clipped to zero.
    inline HermitianMatrix hermitian_sqrt(const HermitianMatrix &a)
    {
        if (a.dim() == 0)
            return a;
        auto [values, vectors] = eigh(a);
        if (values(0) < psd_floor)
            throw NotPsd("hermitian_sqrt: eigenvalue " + std::to_string(values(0)) + " below " +
                         std::to_string(psd_floor));
        const RealVector root = values.cwiseMax(0.0).cwiseSqrt();
        return HermitianMatrix(vectors * root.cast<Complex>().asDiagonal() * vectors.adjoint());
    }

    // Joint factorization A = U_M diag(sigma_m) V^H, B = U_E diag(sigma_e) V^H.
    struct GsvdFactorization
    {
        ComplexMatrix u_m;
        ComplexMatrix u_e;
        RealVector sigma_m; // descending
        RealVector sigma_e;
        ComplexMatrix v;
        RealVector v_inv_gram_diag; // diag(V^{-1} V^{-H})
    };

    namespace detail
    {
        // Orthonormalizes `columns` in the order given by `order`, using two passes of
        // modified Gram-Schmidt. Columns whose residual vanishes are replaced by a unit
        // vector from the orthogonal complement.
        inline ComplexMatrix orthonormalize_columns(const ComplexMatrix &columns, const std::vector<Index> &order)
        {
            const Index n = columns.rows();
            ComplexMatrix q = ComplexMatrix::Zero(n, columns.cols());
            std::vector<Index> accepted;
            accepted.reserve(order.size());

            auto project_out = [&](ComplexVector &w)
            {
                for (int pass = 0; pass < 2; ++pass)
                    for (Index k : accepted)
                        w -= q.col(k) * q.col(k).dot(w);
            };

            for (Index i : order)
            {
                ComplexVector w = columns.col(i);
                project_out(w);
                double nrm = w.norm();
                if (nrm <= 1e-13)
                {
                    // complement: the basis vector with the largest residual
                    double best = -1.0;
                    for (Index k = 0; k < n; ++k)
                    {
                        ComplexVector e = ComplexVector::Unit(n, k);
                        project_out(e);
                        if (e.norm() > best)
                        {
                            best = e.norm();
                            w = e;
                        }
                    }
                    nrm = w.norm();
                }
                q.col(i) = w / nrm;
                accepted.push_back(i);
            }
            return q;
        }
    }

    // Generalized SVD of two square matrices with a shared right factor.
    // QR of the stacked matrix [A; B] = [Q1; Q2] R, then a cosine-sine split obtained from
    // the SVD Q1 = U_M C Z^H. The right factor is V = R^H Z.
    inline GsvdFactorization gsvd(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        const Index m = a.cols();
        if (a.rows() != m || b.rows() != m || b.cols() != m)
            throw DimensionMismatch("gsvd: expected two square matrices of equal size");
        if (m == 0)
            throw InvalidArgument("gsvd: empty input");
        if (!all_finite(a) || !all_finite(b))
            throw InvalidArgument("gsvd: input contains NaN or Inf");

        ComplexMatrix stacked(2 * m, m);
        stacked << a, b;

        Eigen::HouseholderQR<ComplexMatrix> qr(stacked);
        const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(2 * m, m);
        const ComplexMatrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();

        const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(r).singularValues();
        if (!(sv(0) > 0.0) || sv(m - 1) <= gsvd_rank_tolerance * sv(0))
            throw RankDeficient("gsvd: stacked matrix is rank deficient (smallest/largest singular value = " +
                                std::to_string(sv(0) > 0.0 ? sv(m - 1) / sv(0) : 0.0) + ")");

        Eigen::JacobiSVD<ComplexMatrix> cs(q.topRows(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
        const ComplexMatrix &z = cs.matrixV();
        const ComplexMatrix w_e = q.bottomRows(m) * z;

        GsvdFactorization out;
        out.u_m = cs.matrixU();
        out.sigma_m = cs.singularValues();
        out.sigma_e.resize(m);
        for (Index i = 0; i < m; ++i)
        {
            const double c = out.sigma_m(i);
            const double s = w_e.col(i).norm();
            const double h = std::hypot(c, s);
            out.sigma_m(i) = c / h;
            out.sigma_e(i) = s / h;
        }

        // sigma_e ascends with i, so largest sines are orthonormalized first
        std::vector<Index> order(static_cast<std::size_t>(m));
        for (Index i = 0; i < m; ++i)
            order[static_cast<std::size_t>(i)] = m - 1 - i;
        out.u_e = detail::orthonormalize_columns(w_e, order);

        out.v = r.adjoint() * z;
        const ComplexMatrix v_inv_h = r.triangularView<Eigen::Upper>().solve(z); // R^{-1} Z = V^{-H}
        out.v_inv_gram_diag = v_inv_h.colwise().squaredNorm().transpose();
        return out;
    }
}

#endif
