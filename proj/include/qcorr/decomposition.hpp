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

#ifndef QCORR_DECOMPOSITION_HPP
#define QCORR_DECOMPOSITION_HPP

#include <optional>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// Canonical form of a two-particle state.
//
// distinguishable: c = u * diag(coefficients) * v^T, one Schmidt weight per
//   coefficient; rank counts coefficients above the numeric threshold.
// fermion: omega = u * J(coefficients) * u^T, coefficients are the pair
//   amplitudes z_k (floor(n/2) entries including zeros); rank is the Slater
//   rank, i.e. the number of nonzero pair blocks.
// boson: beta = u * diag(coefficients) * u^T with the Takagi coefficients.
//
// transform_basis(state, u [, v]) with the stored unitaries maps the state
// onto its canonical (diagonal / block-diagonal) matrix.
struct CanonicalDecomposition {
    Family family = Family::distinguishable;
    Matrix u;
    std::optional<Matrix> v;
    RealVector coefficients;
    int rank = 0;
};

inline CanonicalDecomposition schmidt_distinguishable(const DistinguishableState &s) {
    SvdResult dec = svd(s.c);
    CanonicalDecomposition out;
    out.family = Family::distinguishable;
    out.u = std::move(dec.u);
    out.v = dec.v.conjugate();
    out.coefficients = std::move(dec.sigma);
    out.rank = numeric_rank(out.coefficients, out.coefficients(0));
    return out;
}

inline CanonicalDecomposition slater_fermion(const FermionState &s) {
    YoulaResult dec = youla(s.omega);
    CanonicalDecomposition out;
    out.family = Family::fermion;
    out.u = std::move(dec.u);
    out.coefficients = std::move(dec.z);
    out.rank = out.coefficients.size() > 0
                   ? numeric_rank(out.coefficients, out.coefficients(0))
                   : 0;
    return out;
}

inline CanonicalDecomposition schmidt_boson(const BosonState &s) {
    TakagiResult dec = takagi(s.beta);
    CanonicalDecomposition out;
    out.family = Family::boson;
    out.u = std::move(dec.u);
    out.coefficients = std::move(dec.b);
    out.rank = numeric_rank(out.coefficients, out.coefficients(0));
    return out;
}

// Canonical matrix the decomposition asserts: diag(coefficients) in the
// state's shape, or the antisymmetric block form for fermions.
inline Matrix canonical_matrix(const CanonicalDecomposition &d, int rows, int cols) {
    if (d.family == Family::fermion) {
        return youla_block_matrix(d.coefficients, rows);
    }
    Matrix m = Matrix::Zero(rows, cols);
    for (Eigen::Index k = 0; k < d.coefficients.size() && k < std::min(rows, cols); ++k) {
        m(k, k) = Complex(d.coefficients(k), 0.0);
    }
    return m;
}

struct PairRotation {
    Matrix rotation;
    BosonState result;
};

// For a boson state already in its canonical (diagonal) basis with two
// degenerate coefficients |beta_{k1 k1}| == |beta_{k2 k2}|, build the
// unitary that turns the (k1, k2) sub-block into the anti-diagonal form
// [[0, b], [b, 0]] — the pair condensate picture of the same state — and
// leaves every other entry unchanged.
inline PairRotation degenerate_pair_rotation(const BosonState &s, int k1, int k2) {
    const int n = static_cast<int>(s.beta.rows());
    if (k1 < 0 || k2 < 0 || k1 >= n || k2 >= n || k1 == k2) {
        throw std::invalid_argument("degenerate_pair_rotation: invalid mode indices");
    }
    const double scale = s.beta.norm();
    double offdiag = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                offdiag = std::max(offdiag, std::abs(s.beta(i, j)));
            }
        }
    }
    if (offdiag > tol::symmetry * scale) {
        throw std::invalid_argument(
            "degenerate_pair_rotation: state is not in its canonical diagonal basis");
    }
    const Complex b1 = s.beta(k1, k1);
    const Complex b2 = s.beta(k2, k2);
    const double mod = std::abs(b1);
    if (std::abs(std::abs(b2) - mod) > tol::cluster_gap * scale) {
        throw std::invalid_argument("degenerate_pair_rotation: coefficients " +
                                    std::to_string(mod) + " and " + std::to_string(std::abs(b2)) +
                                    " are not degenerate");
    }

    // With p = diag(e^{i phi_1 / 2}, e^{i phi_2 / 2}) absorbing the phases
    // and q the Takagi factor of [[0, 1], [1, 0]], the block p q^dagger maps
    // diag(b e^{i phi_1}, b e^{i phi_2}) onto b [[0, 1], [1, 0]].
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd q;
    q << Complex(inv_sqrt2, 0.0), Complex(0.0, inv_sqrt2),
         Complex(inv_sqrt2, 0.0), Complex(0.0, -inv_sqrt2);
    Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
    p(0, 0) = std::polar(1.0, 0.5 * std::arg(b1));
    p(1, 1) = std::polar(1.0, 0.5 * std::arg(b2));
    const Eigen::Matrix2cd block = p * q.adjoint();

    Matrix rotation = Matrix::Identity(n, n);
    rotation(k1, k1) = block(0, 0);
    rotation(k1, k2) = block(0, 1);
    rotation(k2, k1) = block(1, 0);
    rotation(k2, k2) = block(1, 1);

    BosonState rotated = transform_basis(s, rotation);
    return {std::move(rotation), std::move(rotated)};
}

}  // namespace qcorr

#endif  // QCORR_DECOMPOSITION_HPP
