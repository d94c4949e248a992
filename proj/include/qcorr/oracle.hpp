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

#ifndef QCORR_ORACLE_HPP
#define QCORR_ORACLE_HPP

#include "qcorr/measures.hpp"

namespace qcorr {

// Brute-force reduced densities, computed by expanding the state into plain
// product-basis amplitudes t[i][j] and tracing the second particle out with
// explicit summation loops.  This path deliberately shares no formulas with
// reduced_density(); it exists as an independent cross-check.

namespace detail {

inline Matrix partial_trace_second(const Matrix &t) {
    const Eigen::Index rows = t.rows();
    const Eigen::Index cols = t.cols();
    Matrix rho = Matrix::Zero(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index k = 0; k < rows; ++k) {
            Complex acc(0.0, 0.0);
            for (Eigen::Index j = 0; j < cols; ++j) {
                acc += t(i, j) * std::conj(t(k, j));
            }
            rho(i, k) = acc;
        }
    }
    return rho;
}

inline Matrix partial_trace_first(const Matrix &t) {
    const Eigen::Index rows = t.rows();
    const Eigen::Index cols = t.cols();
    Matrix rho = Matrix::Zero(cols, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index l = 0; l < cols; ++l) {
            Complex acc(0.0, 0.0);
            for (Eigen::Index i = 0; i < rows; ++i) {
                acc += t(i, j) * std::conj(t(i, l));
            }
            rho(j, l) = acc;
        }
    }
    return rho;
}

inline void normalize_amplitudes(Matrix &t) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
            total += std::norm(t(i, j));
        }
    }
    t /= std::sqrt(total);
}

}  // namespace detail

inline std::pair<ReducedDensity, ReducedDensity> brute_force_oracle(const DistinguishableState &s) {
    Matrix t = s.c;
    detail::normalize_amplitudes(t);
    return {make_reduced_density(detail::partial_trace_second(t), DensitySide::a),
            make_reduced_density(detail::partial_trace_first(t), DensitySide::b)};
}

inline ReducedDensity brute_force_oracle(const FermionState &s) {
    const Eigen::Index n = s.omega.rows();
    Matrix t(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            t(k, l) = s.omega(k, l) - s.omega(l, k);
        }
    }
    detail::normalize_amplitudes(t);
    return make_reduced_density(detail::partial_trace_second(t), DensitySide::identical);
}

inline ReducedDensity brute_force_oracle(const BosonState &s) {
    const Eigen::Index n = s.beta.rows();
    Matrix t(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            t(k, l) = s.beta(k, l) + s.beta(l, k);
        }
    }
    detail::normalize_amplitudes(t);
    return make_reduced_density(detail::partial_trace_second(t), DensitySide::identical);
}

}  // namespace qcorr

#endif  // QCORR_ORACLE_HPP
