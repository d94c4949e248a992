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

#ifndef QCORR_MATRIX_HPP
#define QCORR_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// All tolerances used across the library live here so that every numeric
// gate is pinned in exactly one place.
namespace tol {

// Relative reconstruction error allowed for a factorization, measured in
// Frobenius norm against the Frobenius norm of the input.
inline constexpr double reconstruction = 1e-10;

// Unitarity defect ||u' u - 1||_F allowed per matrix dimension: the gate is
// unitarity_per_dim * n for an n x n matrix.
inline constexpr double unitarity_per_dim = 1e-11;

// Relative deviation from (anti)symmetry accepted before an input matrix is
// rejected.  Inputs inside the gate are projected onto the symmetry class.
inline constexpr double symmetry = 1e-8;

// Relative deviation from Hermiticity accepted by the Hermitian eigensolver.
inline constexpr double hermiticity = 1e-8;

// Acceptable deviation of the state normalization on ingest; beyond this a
// state file is rejected unless renormalization was requested explicitly.
inline constexpr double normalization = 1e-6;

// Relative threshold deciding which singular values count towards the
// numeric rank: sigma_k > rank_epsilon * max(scale, 1).
inline constexpr double rank_epsilon = 1e-9;

// Singular values closer than cluster_gap * sigma_max are treated as one
// degenerate cluster during the symmetric/antisymmetric factorizations.
inline constexpr double cluster_gap = 1e-8;

}  // namespace tol

// Raised when an input matrix or file violates a structural precondition
// (shape, finiteness, symmetry class, parse errors).
struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a state fails the normalization gate (or is identically zero).
struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_finite(const Matrix &m) {
    return m.allFinite();
}

inline void require_finite(const Matrix &m, const char *who) {
    if (!m.allFinite()) {
        throw IngestError(std::string(who) + ": input contains non-finite entries");
    }
}

inline void require_square(const Matrix &m, const char *who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw IngestError(std::string(who) + ": expected a square matrix, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

// Frobenius-norm defect of u against unitarity.
inline double unitarity_error(const Matrix &u) {
    return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

inline void require_unitary(const Matrix &u, const char *who) {
    require_square(u, who);
    require_finite(u, who);
    const double defect = unitarity_error(u);
    const double gate = tol::unitarity_per_dim * static_cast<double>(u.rows());
    if (defect > gate) {
        throw IngestError(std::string(who) + ": matrix is not unitary, defect " +
                          std::to_string(defect) + " exceeds " + std::to_string(gate));
    }
}

// Largest absolute entry of m - m^T (resp. m + m^T), used for error reports.
inline double max_symmetry_defect(const Matrix &m, double sign) {
    return (m + sign * m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace qcorr

#endif  // QCORR_MATRIX_HPP
