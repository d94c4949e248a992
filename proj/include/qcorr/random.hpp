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

#ifndef QCORR_RANDOM_HPP
#define QCORR_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

using Seed = std::uint64_t;

inline std::mt19937_64 make_rng(Seed seed) {
    return std::mt19937_64(seed);
}

// Derive a stream-local seed; used to keep per-trial draws independent while
// everything stays reproducible from one master seed.
inline Seed fold_seed(Seed master, Seed stream) {
    return master ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
}

// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
// R-diagonal phases folded back in, which removes the QR gauge bias.
inline Matrix haar_unitary(int n, std::mt19937_64 &rng) {
    if (n < 1) {
        throw std::invalid_argument("haar_unitary: dimension must be at least 1");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mod = std::abs(d);
        q.col(j) *= mod > 0.0 ? d / mod : Complex(1.0, 0.0);
    }
    return q;
}

inline Matrix haar_unitary(int n, Seed seed) {
    auto rng = make_rng(seed);
    return haar_unitary(n, rng);
}

namespace detail {

// Flat Dirichlet draw over the open simplex, rejected until every weight
// clears a floor so the requested rank survives the numeric threshold.
inline RealVector simplex_weights(int r, std::mt19937_64 &rng) {
    std::exponential_distribution<double> expo(1.0);
    const double floor = 1e-2 / static_cast<double>(r);
    RealVector w(r);
    while (true) {
        double total = 0.0;
        for (int i = 0; i < r; ++i) {
            w(i) = expo(rng);
            total += w(i);
        }
        w /= total;
        if (r == 1 || w.minCoeff() >= floor) {
            std::sort(w.data(), w.data() + r, std::greater<double>());
            return w;
        }
    }
}

}  // namespace detail

// Random states with a prescribed canonical rank: canonical weights are
// drawn on the simplex, placed in the canonical matrix form, and conjugated
// by Haar random unitaries.  rank < 1 selects the maximal feasible rank.

inline DistinguishableState random_distinguishable(int n, int m, int rank, Seed seed) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("random_distinguishable: mode counts must be at least 1");
    }
    const int max_rank = std::min(n, m);
    if (rank < 1) {
        rank = max_rank;
    }
    if (rank > max_rank) {
        throw std::invalid_argument("random_distinguishable: rank " + std::to_string(rank) +
                                    " infeasible, maximum is " + std::to_string(max_rank));
    }
    auto rng = make_rng(seed);
    const RealVector w = detail::simplex_weights(rank, rng);
    Matrix c = Matrix::Zero(n, m);
    for (int k = 0; k < rank; ++k) {
        c(k, k) = Complex(std::sqrt(w(k)), 0.0);
    }
    const Matrix u = haar_unitary(n, rng);
    const Matrix v = haar_unitary(m, rng);
    return transform_basis(DistinguishableState{c}, u, v);
}

inline FermionState random_fermion(int n, int rank, Seed seed) {
    if (n < 2) {
        throw std::invalid_argument("random_fermion: at least 2 modes are required");
    }
    const int max_rank = n / 2;
    if (rank < 1) {
        rank = max_rank;
    }
    if (rank > max_rank) {
        throw std::invalid_argument("random_fermion: rank " + std::to_string(rank) +
                                    " infeasible, maximum is " + std::to_string(max_rank) +
                                    " for " + std::to_string(n) + " modes");
    }
    auto rng = make_rng(seed);
    const RealVector w = detail::simplex_weights(rank, rng);
    Matrix omega = Matrix::Zero(n, n);
    for (int k = 0; k < rank; ++k) {
        const double z = 0.5 * std::sqrt(w(k));  // sum of z_k^2 is 1/4
        omega(2 * k, 2 * k + 1) = Complex(z, 0.0);
        omega(2 * k + 1, 2 * k) = Complex(-z, 0.0);
    }
    return transform_basis(FermionState{omega}, haar_unitary(n, rng));
}

inline BosonState random_boson(int n, int rank, Seed seed) {
    if (n < 1) {
        throw std::invalid_argument("random_boson: at least 1 mode is required");
    }
    const int max_rank = n;
    if (rank < 1) {
        rank = max_rank;
    }
    if (rank > max_rank) {
        throw std::invalid_argument("random_boson: rank " + std::to_string(rank) +
                                    " infeasible, maximum is " + std::to_string(max_rank));
    }
    auto rng = make_rng(seed);
    const RealVector w = detail::simplex_weights(rank, rng);
    Matrix beta = Matrix::Zero(n, n);
    for (int k = 0; k < rank; ++k) {
        beta(k, k) = Complex(std::sqrt(0.5 * w(k)), 0.0);  // sum of b_k^2 is 1/2
    }
    return transform_basis(BosonState{beta}, haar_unitary(n, rng));
}

}  // namespace qcorr

#endif  // QCORR_RANDOM_HPP
