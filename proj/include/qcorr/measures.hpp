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

#ifndef QCORR_MEASURES_HPP
#define QCORR_MEASURES_HPP

#include <utility>

#include "qcorr/decomposition.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

enum class DensitySide { a, b, identical };

// Single-particle reduced density matrix, stored as rho[mu][nu] = <mu|rho|nu>
// (row index annihilates, column index creates), with its nonincreasing
// eigenvalue spectrum clamped of roundoff negatives.
struct ReducedDensity {
    Matrix matrix;
    RealVector spectrum;
    DensitySide side = DensitySide::identical;
};

inline ReducedDensity make_reduced_density(Matrix rho, DensitySide side) {
    const double trace_defect = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (trace_defect > 1e-12) {
        throw std::runtime_error("reduced density trace deviates from 1 by " +
                                 std::to_string(trace_defect));
    }
    HermitianEig eig = hermitian_eig(rho);
    RealVector spectrum = std::move(eig.eigenvalues);
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        if (spectrum(i) < 0.0) {
            if (spectrum(i) < -1e-12) {
                throw std::runtime_error("reduced density is not positive semidefinite");
            }
            spectrum(i) = 0.0;
        }
    }
    return {std::move(rho), std::move(spectrum), side};
}

// rho_a = c c^dagger and rho_b = (c^dagger c)^T: the transpose realizes the
// second-quantized index convention rho[mu][nu] = <a_nu^dagger a_mu>.
inline std::pair<ReducedDensity, ReducedDensity> reduced_density(const DistinguishableState &s) {
    Matrix rho_a = s.c * s.c.adjoint();
    Matrix rho_b = (s.c.adjoint() * s.c).transpose();
    return {make_reduced_density(std::move(rho_a), DensitySide::a),
            make_reduced_density(std::move(rho_b), DensitySide::b)};
}

inline ReducedDensity reduced_density(const FermionState &s) {
    Matrix rho = 2.0 * (s.omega.adjoint() * s.omega).transpose();
    return make_reduced_density(std::move(rho), DensitySide::identical);
}

inline ReducedDensity reduced_density(const BosonState &s) {
    Matrix rho = 2.0 * (s.beta.adjoint() * s.beta).transpose();
    return make_reduced_density(std::move(rho), DensitySide::identical);
}

inline double entropy_of_spectrum(const RealVector &spectrum) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        if (spectrum(i) > 0.0) {
            s -= spectrum(i) * std::log(spectrum(i));
        }
    }
    return s;
}

// Von Neumann entropy -tr(rho ln rho) in nats.
inline double von_neumann_entropy(const ReducedDensity &rho) {
    return entropy_of_spectrum(rho.spectrum);
}

// Eigenvalues of the reduced density expressed through the canonical
// coefficients: d_k^2 once per side for distinguishable particles, 2 z_k^2
// twice per pair block for fermions, 2 b_k^2 for bosons.
inline RealVector density_spectrum_closed_form(const CanonicalDecomposition &d) {
    const Eigen::Index r = d.coefficients.size();
    if (d.family == Family::fermion) {
        RealVector s(2 * r);
        for (Eigen::Index k = 0; k < r; ++k) {
            const double w = 2.0 * d.coefficients(k) * d.coefficients(k);
            s(2 * k) = w;
            s(2 * k + 1) = w;
        }
        return s;
    }
    RealVector s(r);
    for (Eigen::Index k = 0; k < r; ++k) {
        const double c = d.coefficients(k);
        s(k) = (d.family == Family::boson ? 2.0 : 1.0) * c * c;
    }
    return s;
}

inline double entropy_closed_form(const CanonicalDecomposition &d) {
    return entropy_of_spectrum(density_spectrum_closed_form(d));
}

// Entropy range implied by the family and mode counts; the fermion ceiling
// uses the largest even mode count n_e <= n.
inline double entropy_floor(Family family) {
    return family == Family::fermion ? std::log(2.0) : 0.0;
}

inline double entropy_ceiling(Family family, int rows, int cols) {
    switch (family) {
        case Family::distinguishable: return std::log(static_cast<double>(std::min(rows, cols)));
        case Family::fermion: return std::log(static_cast<double>(2 * (rows / 2)));
        case Family::boson: return std::log(static_cast<double>(rows));
    }
    return 0.0;
}

// Inverse participation ratios.  k_slater weighs whole canonical units (one
// weight per Schmidt term or per fermion pair block) and equals 1 exactly on
// rank-1 states of every family; k_density is the literal 1 / tr(rho^2),
// which counts single-particle levels and reports 2 on a single Slater
// determinant.  Both are reported side by side.
struct GrobeK {
    double k_slater = 1.0;
    double k_density = 1.0;
};

inline GrobeK grobe_k(const CanonicalDecomposition &d) {
    double sum_units = 0.0;
    for (Eigen::Index k = 0; k < d.coefficients.size(); ++k) {
        const double c2 = d.coefficients(k) * d.coefficients(k);
        double unit = c2;
        if (d.family == Family::fermion) {
            unit = 4.0 * c2;
        } else if (d.family == Family::boson) {
            unit = 2.0 * c2;
        }
        sum_units += unit * unit;
    }
    const RealVector spectrum = density_spectrum_closed_form(d);
    double purity = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        purity += spectrum(i) * spectrum(i);
    }
    return {1.0 / sum_units, 1.0 / purity};
}

// Product of the squared canonical weights over the numeric rank.  Zero
// weights are excluded so the measure stays nonzero on rank-deficient
// states; it is maximal on the maximally correlated (uniform) state.
inline double det_measure(const CanonicalDecomposition &d) {
    double prod = 1.0;
    for (int k = 0; k < d.rank; ++k) {
        prod *= d.coefficients(k) * d.coefficients(k);
    }
    return prod;
}

struct CorrelationReport {
    Family family = Family::distinguishable;
    int rows = 0;
    int cols = 0;
    int rank = 0;
    double entropy = 0.0;
    double entropy_floor = 0.0;
    double entropy_ceiling = 0.0;
    double grobe_k = 1.0;
    double k_density = 1.0;
    double det_measure = 0.0;
    bool correlated = false;
};

namespace detail {

inline CorrelationReport report_from(const CanonicalDecomposition &d, int rows, int cols) {
    CorrelationReport r;
    r.family = d.family;
    r.rows = rows;
    r.cols = cols;
    r.rank = d.rank;
    r.entropy = entropy_closed_form(d);
    r.entropy_floor = entropy_floor(d.family);
    r.entropy_ceiling = entropy_ceiling(d.family, rows, cols);
    const GrobeK k = grobe_k(d);
    r.grobe_k = k.k_slater;
    r.k_density = k.k_density;
    r.det_measure = det_measure(d);
    r.correlated = d.rank > 1;
    return r;
}

}  // namespace detail

inline CorrelationReport analyze(const DistinguishableState &s) {
    return detail::report_from(schmidt_distinguishable(s), static_cast<int>(s.c.rows()),
                               static_cast<int>(s.c.cols()));
}

inline CorrelationReport analyze(const FermionState &s) {
    const int n = static_cast<int>(s.omega.rows());
    return detail::report_from(slater_fermion(s), n, n);
}

inline CorrelationReport analyze(const BosonState &s) {
    const int n = static_cast<int>(s.beta.rows());
    return detail::report_from(schmidt_boson(s), n, n);
}

// Certificate that the uniform canonical weights xi_k = 1/(2n) maximize the
// weight product on the feasible simplex sum(xi) = 1/2, xi_k > 0.
struct DetMaxRecord {
    int n = 0;
    double uniform_value = 0.0;
    double gradient_max_abs = 0.0;
    RealVector hessian_eigenvalues;
    double probe_max = 0.0;
    int probes = 0;
    bool gradient_ok = false;
    bool hessian_negative_definite = false;
    bool probes_ok = false;

    bool confirmed() const { return gradient_ok && hessian_negative_definite && probes_ok; }
};

// Checks, for 2 <= n <= 8: (a) the analytic gradient of the reduced
// functional f(xi_2..xi_n) = (1/2 - sum xi_j) * prod xi_j vanishes at the
// uniform point, (b) a central finite-difference Hessian there is negative
// definite, and (c) random feasible probes never beat the uniform value.
inline DetMaxRecord verify_det_maximum(int n, int probes = 10000, Seed seed = 0) {
    if (n < 2 || n > 8) {
        throw std::invalid_argument("verify_det_maximum: n must lie in [2, 8], got " +
                                    std::to_string(n));
    }
    const int dim = n - 1;
    const auto value = [n](const RealVector &y) {
        double first = 0.5;
        double prod = 1.0;
        for (int j = 0; j < n - 1; ++j) {
            first -= y(j);
            prod *= y(j);
        }
        return first * prod;
    };

    DetMaxRecord rec;
    rec.n = n;
    rec.probes = probes;

    const double xi = 1.0 / (2.0 * n);
    const RealVector uniform = RealVector::Constant(dim, xi);
    rec.uniform_value = value(uniform);

    // Analytic gradient: d f / d y_i = -prod(y) + (1/2 - sum y) prod_{j != i} y_j.
    double grad_max = 0.0;
    {
        double first = 0.5;
        double prod = 1.0;
        for (int j = 0; j < dim; ++j) {
            first -= uniform(j);
            prod *= uniform(j);
        }
        for (int i = 0; i < dim; ++i) {
            double prod_rest = 1.0;
            for (int j = 0; j < dim; ++j) {
                if (j != i) {
                    prod_rest *= uniform(j);
                }
            }
            grad_max = std::max(grad_max, std::abs(-prod + first * prod_rest));
        }
    }
    rec.gradient_max_abs = grad_max;
    rec.gradient_ok = grad_max <= 1e-10;

    // Central finite differences around the uniform point.
    const double h = 1e-4 * xi;
    RealMatrix hess(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j <= i; ++j) {
            double hij = 0.0;
            if (i == j) {
                RealVector yp = uniform, ym = uniform;
                yp(i) += h;
                ym(i) -= h;
                hij = (value(yp) - 2.0 * rec.uniform_value + value(ym)) / (h * h);
            } else {
                RealVector ypp = uniform, ypm = uniform, ymp = uniform, ymm = uniform;
                ypp(i) += h; ypp(j) += h;
                ypm(i) += h; ypm(j) -= h;
                ymp(i) -= h; ymp(j) += h;
                ymm(i) -= h; ymm(j) -= h;
                hij = (value(ypp) - value(ypm) - value(ymp) + value(ymm)) / (4.0 * h * h);
            }
            hess(i, j) = hij;
            hess(j, i) = hij;
        }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(hess);
    rec.hessian_eigenvalues = es.eigenvalues().reverse();
    rec.hessian_negative_definite = rec.hessian_eigenvalues.size() > 0 &&
                                    rec.hessian_eigenvalues.maxCoeff() <= -1e-12;

    // Uniform random probes over the open simplex sum(xi) = 1/2.
    auto rng = make_rng(seed);
    std::exponential_distribution<double> expo(1.0);
    double probe_max = 0.0;
    for (int t = 0; t < probes; ++t) {
        RealVector xi_full(n);
        double total = 0.0;
        for (int k = 0; k < n; ++k) {
            xi_full(k) = expo(rng);
            total += xi_full(k);
        }
        xi_full *= 0.5 / total;
        double prod = 1.0;
        for (int k = 0; k < n; ++k) {
            prod *= xi_full(k);
        }
        probe_max = std::max(probe_max, prod);
    }
    rec.probe_max = probe_max;
    rec.probes_ok = probe_max <= rec.uniform_value;
    return rec;
}

}  // namespace qcorr

#endif  // QCORR_MEASURES_HPP
