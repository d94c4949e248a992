// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCORR_LINALG_HPP
#define QCORR_LINALG_HPP

#include <numeric>
#include <utility>
#include <vector>

#include "qcorr/matrix.hpp"

namespace qcorr {

// m = u * diag(sigma) * v^dagger, sigma nonincreasing, u and v full unitary.
struct SvdResult {
    Matrix u;
    RealVector sigma;
    Matrix v;
};

// Nonincreasing eigenvalues and matching orthonormal eigenvector columns.
struct HermitianEig {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

// m = u * diag(b) * u^T for complex symmetric m, b nonnegative nonincreasing.
struct TakagiResult {
    Matrix u;
    RealVector b;
};

// m = u * J(z) * u^T for complex antisymmetric m, where J(z) is the direct
// sum of 2x2 blocks [[0, z_k], [-z_k, 0]] padded with a zero diagonal block.
// z holds floor(n/2) nonnegative entries, nonincreasing; has_zero_tail is
// true when the block form ends in an all-zero block (odd n or rank < n).
struct YoulaResult {
    Matrix u;
    RealVector z;
    bool has_zero_tail = false;
};

inline SvdResult svd(const Matrix &m) {
    require_finite(m, "svd");
    if (m.rows() < 1 || m.cols() < 1) {
        throw IngestError("svd: empty matrix");
    }
    Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

inline HermitianEig hermitian_eig(const Matrix &m) {
    require_square(m, "hermitian_eig");
    require_finite(m, "hermitian_eig");
    const double scale = m.norm();
    const double defect = (m - m.adjoint()).norm();
    if (scale > 0.0 && defect > tol::hermiticity * scale) {
        throw IngestError("hermitian_eig: matrix is not Hermitian, relative defect " +
                          std::to_string(defect / scale));
    }
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }
    // Eigen sorts ascending; the library convention is nonincreasing.
    HermitianEig out;
    out.eigenvalues = es.eigenvalues().reverse();
    out.eigenvectors = es.eigenvectors().rowwise().reverse();
    return out;
}

// Number of singular values above the relative rank threshold.
inline int numeric_rank(const RealVector &sigma, double scale) {
    const double threshold = tol::rank_epsilon * std::max(scale, 1.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > threshold) {
            ++rank;
        }
    }
    return rank;
}

namespace detail {

// Contiguous [begin, end) index ranges of values whose consecutive gaps stay
// within `gap`.  `values` must be nonincreasing.
inline std::vector<std::pair<int, int>> cluster_ranges(const RealVector &values, double gap) {
    std::vector<std::pair<int, int>> ranges;
    const int n = static_cast<int>(values.size());
    int start = 0;
    for (int i = 1; i < n; ++i) {
        if (values(i - 1) - values(i) > gap) {
            ranges.emplace_back(start, i);
            start = i;
        }
    }
    if (n > 0) {
        ranges.emplace_back(start, n);
    }
    return ranges;
}

// Flip the sign of each column whose largest-modulus entry has a negative
// real part (imaginary part breaks ties), so repeated runs and reorderings
// produce identical columns.  Sign flips leave u * diag(b) * u^T unchanged.
inline void canonicalize_column_signs(Matrix &u) {
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        Eigen::Index imax = 0;
        u.col(k).cwiseAbs().maxCoeff(&imax);
        const Complex lead = u(imax, k);
        if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) {
            u.col(k) = -u.col(k);
        }
    }
}

// Multiply the column by the phase that makes its largest-modulus entry real
// positive; returns the applied phase so a paired column can compensate.
inline Complex canonicalize_column_phase(Matrix &u, Eigen::Index k) {
    Eigen::Index imax = 0;
    u.col(k).cwiseAbs().maxCoeff(&imax);
    const Complex lead = u(imax, k);
    const double mod = std::abs(lead);
    if (mod <= 0.0) {
        return Complex(1.0, 0.0);
    }
    const Complex phase = std::conj(lead) / mod;
    u.col(k) *= phase;
    return phase;
}

}  // namespace detail

// Takagi factorization of a complex symmetric matrix: m = u * diag(b) * u^T.
//
// The routine runs an ordinary SVD first.  With m symmetric, the left
// singular basis is correct up to a unitary mixing inside each cluster of
// equal singular values, so the symmetric core mm = u^dagger * m * conj(u)
// is block-diagonal over the clusters and only needs a per-cluster fix.
// Each cluster block X + iY is resolved through its doubled real form: for
// w = p + iq the Takagi relation (X + iY) * conj(w) = b * w reads
//
//     [ X   Y ] [p]       [p]
//     [ Y  -X ] [q] = b * [q],
//
// a real symmetric eigenproblem with spectrum {+/- b_k} whose positive half
// delivers the block's Takagi values and orthonormal vectors in one stable
// solve, including repeated or nearly split values.  Singleton clusters
// collapse to a scalar phase.
inline TakagiResult takagi(const Matrix &m) {
    require_square(m, "takagi");
    require_finite(m, "takagi");
    const double scale = m.norm();
    const double defect = (m - m.transpose()).norm();
    if (scale > 0.0 && defect > tol::symmetry * scale) {
        throw IngestError("takagi: matrix is not symmetric, max |m - m^T| entry " +
                          std::to_string(max_symmetry_defect(m, -1.0)));
    }
    const int n = static_cast<int>(m.rows());
    const Matrix a = 0.5 * (m + m.transpose());

    SvdResult s = svd(a);
    Matrix u = std::move(s.u);
    RealVector b = RealVector::Zero(n);

    // Symmetric core in the left singular basis; exactly symmetrized so the
    // real and imaginary parts of each cluster block are symmetric matrices.
    Matrix mm = u.adjoint() * a * u.conjugate();
    mm = 0.5 * (mm + mm.transpose()).eval();

    const double gap = tol::cluster_gap * (s.sigma.size() > 0 ? s.sigma(0) : 0.0);
    for (const auto &[lo, hi] : detail::cluster_ranges(s.sigma, gap)) {
        const int len = hi - lo;
        if (s.sigma(lo) <= 0.0) {
            continue;  // Exact kernel: b stays zero, the basis columns stand.
        }
        if (len == 1) {
            const Complex d = mm(lo, lo);
            b(lo) = std::abs(d);
            if (b(lo) > 0.0) {
                u.col(lo) *= std::polar(1.0, 0.5 * std::arg(d));
            }
            continue;
        }

        RealMatrix x = mm.block(lo, lo, len, len).real();
        RealMatrix y = mm.block(lo, lo, len, len).imag();
        x = (0.5 * (x + x.transpose())).eval();
        y = (0.5 * (y + y.transpose())).eval();

        RealMatrix doubled(2 * len, 2 * len);
        doubled.topLeftCorner(len, len) = x;
        doubled.topRightCorner(len, len) = y;
        doubled.bottomLeftCorner(len, len) = y;
        doubled.bottomRightCorner(len, len) = -x;
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(doubled);

        // Eigen orders ascending, so the positive half sits in the top len
        // columns; walking them in reverse keeps the moduli nonincreasing.
        Matrix w(len, len);
        for (int k = 0; k < len; ++k) {
            const int col = 2 * len - 1 - k;
            w.col(k).real() = es.eigenvectors().col(col).head(len);
            w.col(k).imag() = es.eigenvectors().col(col).tail(len);
            b(lo + k) = std::max(es.eigenvalues()(col), 0.0);
        }
        u.middleCols(lo, len) = (u.middleCols(lo, len) * w).eval();
    }

    // Cluster boundaries can wobble at roundoff level; restore a globally
    // nonincreasing order without disturbing ties.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&b](int p, int r) { return b(p) > b(r); });
    Matrix usorted(n, n);
    RealVector bsorted(n);
    for (int k = 0; k < n; ++k) {
        usorted.col(k) = u.col(perm[k]);
        bsorted(k) = b(perm[k]);
    }
    detail::canonicalize_column_signs(usorted);
    return {std::move(usorted), std::move(bsorted)};
}

// Youla block factorization of a complex antisymmetric matrix:
// m = u * J(z) * u^T with u unitary and J(z) the canonical block form.
//
// The pair planes are the eigenspaces of the positive semidefinite product
// h = m m^dagger, whose nonzero eigenvalues are the z_k^2, each doubly
// degenerate.  For a unit vector w1 in such an eigenspace, w2 defined by
// m * conj(w1) = -z * w2 closes the 2x2 block: m * conj(w2) = +z * w1, and
// w2 is automatically orthogonal to w1 and to every other pair.  A greedy
// sweep over the eigenvector columns therefore assembles u two columns at a
// time; leftover directions span the kernel and are appended via QR
// completion.  This route never calls the SVD, which keeps it independent
// of the singular-value cross-checks used in the tests.
inline YoulaResult youla(const Matrix &m) {
    require_square(m, "youla");
    require_finite(m, "youla");
    const double scale = m.norm();
    const double defect = (m + m.transpose()).norm();
    if (scale > 0.0 && defect > tol::symmetry * scale) {
        throw IngestError("youla: matrix is not antisymmetric, max |m + m^T| entry " +
                          std::to_string(max_symmetry_defect(m, 1.0)));
    }
    const int n = static_cast<int>(m.rows());
    const int nblocks = n / 2;
    const Matrix a = 0.5 * (m - m.transpose());

    YoulaResult out;
    out.u = Matrix::Identity(n, n);
    out.z = RealVector::Zero(nblocks);

    const HermitianEig eig = hermitian_eig(a * a.adjoint());

    // Per-column action norms ||a * conj(w)||: these equal the local z even
    // when the tiny eigenvalues of a*a^dagger drown in roundoff.
    std::vector<double> action(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        action[i] = (a * eig.eigenvectors.col(i).conjugate()).norm();
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&action](int p, int r) { return action[p] > action[r]; });

    const double smax = action[order[0]];
    if (smax <= 0.0) {
        out.has_zero_tail = n > 0;
        return out;
    }
    const double kernel_gate = 1e-12 * smax;

    std::vector<Vector> columns;
    std::vector<double> zs;
    columns.reserve(n);
    auto project_out = [&columns](Vector &w) {
        for (const Vector &c : columns) {
            w -= c * c.dot(w);
        }
    };

    for (int idx : order) {
        if (action[idx] <= kernel_gate) {
            continue;  // Kernel noise; QR completion supplies these columns.
        }
        Vector w1 = eig.eigenvectors.col(idx);
        project_out(w1);
        const double remainder = w1.norm();
        if (remainder < 0.5) {
            continue;  // Direction already consumed as some earlier partner.
        }
        w1 /= remainder;
        const Vector reach = -(a * w1.conjugate());
        const double z = reach.norm();
        if (z <= kernel_gate) {
            continue;
        }
        Vector w2 = reach / z;
        project_out(w2);
        w2 -= w1 * w1.dot(w2);
        const double r2 = w2.norm();
        if (r2 < 0.5) {
            continue;  // No clean partner left; genuine only in pathologies.
        }
        w2 /= r2;
        columns.push_back(std::move(w1));
        columns.push_back(std::move(w2));
        zs.push_back(z);
    }

    // Nonincreasing pair order (stable; the sweep already emits roughly so).
    std::vector<int> pair_order(zs.size());
    std::iota(pair_order.begin(), pair_order.end(), 0);
    std::stable_sort(pair_order.begin(), pair_order.end(),
                     [&zs](int p, int r) { return zs[p] > zs[r]; });

    const int pairs = static_cast<int>(zs.size());
    Matrix u(n, n);
    for (int k = 0; k < pairs; ++k) {
        u.col(2 * k) = columns[2 * pair_order[k]];
        u.col(2 * k + 1) = columns[2 * pair_order[k] + 1];
        out.z(k) = zs[pair_order[k]];
        // Opposite phases on the two columns keep u * J * u^T unchanged.
        const Complex phase = detail::canonicalize_column_phase(u, 2 * k);
        u.col(2 * k + 1) *= std::conj(phase);
    }
    if (2 * pairs < n) {
        Matrix completion;
        if (pairs == 0) {
            completion = Matrix::Identity(n, n);
        } else {
            Eigen::HouseholderQR<Matrix> qr(u.leftCols(2 * pairs));
            completion = qr.householderQ();
        }
        u.rightCols(n - 2 * pairs) = completion.rightCols(n - 2 * pairs);
        for (int k = 2 * pairs; k < n; ++k) {
            detail::canonicalize_column_phase(u, k);  // z = 0: free phase.
        }
    }

    out.u = std::move(u);
    const int rank_blocks = numeric_rank(out.z, smax);
    out.has_zero_tail = (n % 2 == 1) || (2 * rank_blocks < n);
    return out;
}

// The canonical block matrix J(z) appearing in the Youla form.
inline Matrix youla_block_matrix(const RealVector &z, int n) {
    Matrix j = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; 2 * k + 1 < n && k < z.size(); ++k) {
        j(2 * k, 2 * k + 1) = Complex(z(k), 0.0);
        j(2 * k + 1, 2 * k) = Complex(-z(k), 0.0);
    }
    return j;
}

}  // namespace qcorr

#endif  // QCORR_LINALG_HPP
