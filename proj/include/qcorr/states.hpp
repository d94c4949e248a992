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

#ifndef QCORR_STATES_HPP
#define QCORR_STATES_HPP

#include <string>

#include "qcorr/matrix.hpp"

namespace qcorr {

enum class Family { distinguishable, fermion, boson };

inline const char *family_name(Family f) {
    switch (f) {
        case Family::distinguishable: return "distinguishable";
        case Family::fermion: return "fermion";
        case Family::boson: return "boson";
    }
    return "unknown";
}

// Pure state of two distinguishable particles with mode counts (n, m):
// the coefficient matrix c is n x m with tr(c^dagger c) = 1.
struct DistinguishableState {
    Matrix c;
};

// Pure state of two identical fermions over n >= 2 modes: the coefficient
// matrix omega is n x n antisymmetric with tr(omega^dagger omega) = 1/2.
struct FermionState {
    Matrix omega;
};

// Pure state of two identical bosons over n >= 1 modes: the coefficient
// matrix beta is n x n symmetric with tr(beta^dagger beta) = 1/2.
struct BosonState {
    Matrix beta;
};

struct IngestOptions {
    bool renormalize = false;
};

namespace detail {

// Rescale so that tr(m^dagger m) == target exactly (to roundoff); the gate
// only applies when renormalization was not requested.
inline Matrix rescale_to(const Matrix &m, double target, bool renormalize, const char *who) {
    const double current = m.squaredNorm();
    if (current <= 0.0) {
        throw NormalizationError(std::string(who) + ": zero matrix admits no normalized state");
    }
    if (!renormalize) {
        const double deviation = std::abs(current / target - 1.0);
        if (deviation > tol::normalization) {
            throw NormalizationError(std::string(who) + ": normalization deviates by " +
                                     std::to_string(deviation) + " (gate " +
                                     std::to_string(tol::normalization) +
                                     "); pass renormalize to accept");
        }
    }
    return m * std::sqrt(target / current);
}

inline void require_symmetry_class(const Matrix &m, double sign, const char *who) {
    const double scale = m.norm();
    const double defect = (m + sign * m.transpose()).norm();
    if (scale > 0.0 && defect > tol::symmetry * scale) {
        throw IngestError(std::string(who) + ": matrix violates the symmetry class, max defect entry " +
                          std::to_string(max_symmetry_defect(m, sign)));
    }
}

}  // namespace detail

inline DistinguishableState make_distinguishable(const Matrix &c, IngestOptions opt = {}) {
    if (c.rows() < 1 || c.cols() < 1) {
        throw IngestError("distinguishable: mode counts must be at least 1");
    }
    require_finite(c, "distinguishable");
    return {detail::rescale_to(c, 1.0, opt.renormalize, "distinguishable")};
}

inline FermionState make_fermion(const Matrix &m, IngestOptions opt = {}) {
    require_square(m, "fermion");
    if (m.rows() < 2) {
        throw IngestError("fermion: at least 2 modes are required");
    }
    require_finite(m, "fermion");
    detail::require_symmetry_class(m, 1.0, "fermion");
    const Matrix omega = 0.5 * (m - m.transpose());
    return {detail::rescale_to(omega, 0.5, opt.renormalize, "fermion")};
}

inline BosonState make_boson(const Matrix &m, IngestOptions opt = {}) {
    require_square(m, "boson");
    require_finite(m, "boson");
    detail::require_symmetry_class(m, -1.0, "boson");
    const Matrix beta = 0.5 * (m + m.transpose());
    return {detail::rescale_to(beta, 0.5, opt.renormalize, "boson")};
}

// Rescale an already-valid state back to exact normalization.
inline DistinguishableState normalized(const DistinguishableState &s) {
    return {detail::rescale_to(s.c, 1.0, true, "distinguishable")};
}

inline FermionState normalized(const FermionState &s) {
    return {detail::rescale_to(s.omega, 0.5, true, "fermion")};
}

inline BosonState normalized(const BosonState &s) {
    return {detail::rescale_to(s.beta, 0.5, true, "boson")};
}

// Single-particle basis change a_mu -> sum_nu u_{mu nu} a'_nu on each side.
// The coefficient matrices transform as c -> u^dagger c conj(v),
// omega -> u^dagger omega conj(u), beta -> u^dagger beta conj(u); the
// symmetry class is restored exactly after the floating-point products.
inline DistinguishableState transform_basis(const DistinguishableState &s, const Matrix &u,
                                            const Matrix &v) {
    require_unitary(u, "transform_basis");
    require_unitary(v, "transform_basis");
    if (u.rows() != s.c.rows() || v.rows() != s.c.cols()) {
        throw IngestError("transform_basis: unitary dimensions do not match the state");
    }
    return {u.adjoint() * s.c * v.conjugate()};
}

inline FermionState transform_basis(const FermionState &s, const Matrix &u) {
    require_unitary(u, "transform_basis");
    if (u.rows() != s.omega.rows()) {
        throw IngestError("transform_basis: unitary dimension does not match the state");
    }
    Matrix omega = u.adjoint() * s.omega * u.conjugate();
    omega = 0.5 * (omega - omega.transpose()).eval();
    return {std::move(omega)};
}

inline BosonState transform_basis(const BosonState &s, const Matrix &u) {
    require_unitary(u, "transform_basis");
    if (u.rows() != s.beta.rows()) {
        throw IngestError("transform_basis: unitary dimension does not match the state");
    }
    Matrix beta = u.adjoint() * s.beta * u.conjugate();
    beta = 0.5 * (beta + beta.transpose()).eval();
    return {std::move(beta)};
}

}  // namespace qcorr

#endif  // QCORR_STATES_HPP
