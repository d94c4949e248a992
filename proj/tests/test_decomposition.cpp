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

#include "qcorr/decomposition.hpp"

#include <gtest/gtest.h>

#include "qcorr/measures.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/random.hpp"

namespace {

using qcorr::Complex;
using qcorr::Matrix;
using qcorr::RealVector;

TEST(SchmidtDistinguishable, ProductStateHasRankOne) {
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = Complex(1.0, 0.0);
    const auto d = qcorr::schmidt_distinguishable(qcorr::make_distinguishable(c));
    EXPECT_EQ(d.rank, 1);
    EXPECT_NEAR(d.coefficients(0), 1.0, 1e-14);
    EXPECT_NEAR(d.coefficients(1), 0.0, 1e-14);
}

TEST(SchmidtDistinguishable, MaximallyEntangledPair) {
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = Complex(1.0 / std::sqrt(2.0), 0.0);
    c(1, 1) = Complex(1.0 / std::sqrt(2.0), 0.0);
    const auto d = qcorr::schmidt_distinguishable(qcorr::make_distinguishable(c));
    EXPECT_EQ(d.rank, 2);
    EXPECT_NEAR(d.coefficients(0), 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(d.coefficients(1), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(SchmidtDistinguishable, ReconstructionAndDiagonalization) {
    const auto s = qcorr::random_distinguishable(3, 5, 3, 21);
    const auto d = qcorr::schmidt_distinguishable(s);
    ASSERT_TRUE(d.v.has_value());

    // c = u diag(coefficients) v^T
    const Matrix rebuilt =
        d.u * qcorr::canonical_matrix(d, 3, 5) * d.v->transpose();
    EXPECT_LT((rebuilt - s.c).norm(), 1e-12);

    // transform_basis with the returned unitaries lands on the diagonal form.
    const auto t = qcorr::transform_basis(s, d.u, *d.v);
    EXPECT_LT((t.c - qcorr::canonical_matrix(d, 3, 5)).norm(), 1e-12);
}

TEST(SchmidtDistinguishable, CoefficientsMatchDensityOracle) {
    // Schmidt weights must square to the reduced-density spectrum computed
    // by the brute-force partial trace.
    const auto s = qcorr::random_distinguishable(4, 4, 4, 23);
    const auto d = qcorr::schmidt_distinguishable(s);
    const auto rho = qcorr::brute_force_oracle(s);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(d.coefficients(k) * d.coefficients(k), rho.first.spectrum(k), 1e-12);
        EXPECT_NEAR(d.coefficients(k) * d.coefficients(k), rho.second.spectrum(k), 1e-12);
    }
}

TEST(SlaterFermion, TwoModesSingleDeterminant) {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0.5, 0), Complex(-0.5, 0), Complex(0, 0);
    const auto d = qcorr::slater_fermion(qcorr::make_fermion(m));
    EXPECT_EQ(d.rank, 1);
    ASSERT_EQ(d.coefficients.size(), 1);
    EXPECT_NEAR(d.coefficients(0), 0.5, 1e-14);
}

TEST(SlaterFermion, TwoBlockState) {
    RealVector z(2);
    z << 1.0 / std::sqrt(8.0), 1.0 / std::sqrt(8.0);
    const Matrix m = qcorr::youla_block_matrix(z, 4);
    const auto d = qcorr::slater_fermion(qcorr::make_fermion(m));
    EXPECT_EQ(d.rank, 2);
    EXPECT_NEAR(d.coefficients(0), 1.0 / std::sqrt(8.0), 1e-14);
    EXPECT_NEAR(d.coefficients(1), 1.0 / std::sqrt(8.0), 1e-14);
}

TEST(SlaterFermion, NormalizationIdentityAndBlockTransform) {
    const auto s = qcorr::random_fermion(6, 3, 31);
    const auto d = qcorr::slater_fermion(s);
    // sum of z_k^2 = 1/4 for a normalized fermion state
    EXPECT_NEAR(d.coefficients.squaredNorm(), 0.25, 1e-12);

    // The returned unitary maps the state onto the canonical block form.
    const auto t = qcorr::transform_basis(s, d.u);
    EXPECT_LT((t.omega - qcorr::youla_block_matrix(d.coefficients, 6)).norm(), 1e-11);
}

TEST(SlaterFermion, MatrixRankIsTwiceSlaterRank) {
    const auto s = qcorr::random_fermion(8, 3, 37);
    const auto d = qcorr::slater_fermion(s);
    EXPECT_EQ(d.rank, 3);
    const auto svd = qcorr::svd(s.omega);
    EXPECT_EQ(qcorr::numeric_rank(svd.sigma, svd.sigma(0)), 6);
}

TEST(SchmidtBoson, DiagonalCondensate) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = Complex(1.0 / std::sqrt(2.0), 0.0);
    const auto d = qcorr::schmidt_boson(qcorr::make_boson(m));
    EXPECT_EQ(d.rank, 1);
    EXPECT_NEAR(d.coefficients(0), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(SchmidtBoson, RecoversConstructedRank) {
    const auto s = qcorr::random_boson(5, 3, 41);
    const auto d = qcorr::schmidt_boson(s);
    EXPECT_EQ(d.rank, 3);
    EXPECT_NEAR(d.coefficients.squaredNorm(), 0.5, 1e-12);

    const auto t = qcorr::transform_basis(s, d.u);
    EXPECT_LT((t.beta - qcorr::canonical_matrix(d, 5, 5)).norm(), 1e-11);
}

TEST(Invariance, CoefficientsStableUnderBasisChanges) {
    auto rng = qcorr::make_rng(47);
    const auto sd = qcorr::random_distinguishable(4, 3, 2, 47);
    const auto sf = qcorr::random_fermion(6, 2, 48);
    const auto sb = qcorr::random_boson(5, 4, 49);
    const RealVector cd = qcorr::schmidt_distinguishable(sd).coefficients;
    const RealVector cf = qcorr::slater_fermion(sf).coefficients;
    const RealVector cb = qcorr::schmidt_boson(sb).coefficients;
    for (int t = 0; t < 5; ++t) {
        const Matrix u4 = qcorr::haar_unitary(4, rng);
        const Matrix u3 = qcorr::haar_unitary(3, rng);
        const Matrix u6 = qcorr::haar_unitary(6, rng);
        const Matrix u5 = qcorr::haar_unitary(5, rng);
        const auto dd = qcorr::schmidt_distinguishable(qcorr::transform_basis(sd, u4, u3));
        const auto df = qcorr::slater_fermion(qcorr::transform_basis(sf, u6));
        const auto db = qcorr::schmidt_boson(qcorr::transform_basis(sb, u5));
        EXPECT_LT((dd.coefficients - cd).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT((df.coefficients - cf).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT((db.coefficients - cb).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_EQ(dd.rank, 2);
        EXPECT_EQ(df.rank, 2);
        EXPECT_EQ(db.rank, 4);
    }
}

TEST(PairRotation, EqualWeightsBecomeAntiDiagonal) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = Complex(0.5, 0.0);
    m(1, 1) = Complex(0.5, 0.0);
    const auto s = qcorr::make_boson(m);
    const auto r = qcorr::degenerate_pair_rotation(s, 0, 1);
    EXPECT_NEAR(std::abs(r.result.beta(0, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.result.beta(1, 1)), 0.0, 1e-12);
    EXPECT_NEAR(r.result.beta(0, 1).real(), 0.5, 1e-12);
    EXPECT_NEAR(r.result.beta(0, 1).imag(), 0.0, 1e-12);
    EXPECT_LT(qcorr::unitarity_error(r.rotation), 1e-13);
}

TEST(PairRotation, HandlesRelativePhases) {
    const double b = 0.5;
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::polar(b, 1.0);   // phase +1 rad
    m(1, 1) = std::polar(b, -0.4);  // phase -0.4 rad
    const auto s = qcorr::make_boson(m);
    const auto r = qcorr::degenerate_pair_rotation(s, 0, 1);
    EXPECT_NEAR(std::abs(r.result.beta(0, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.result.beta(1, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.result.beta(0, 1)), b, 1e-12);
    EXPECT_NEAR(r.result.beta(0, 1).imag(), 0.0, 1e-12);
}

TEST(PairRotation, LeavesOtherModesUntouchedAndKeepsMeasures) {
    // Three modes: a degenerate pair on (1, 2) plus a spectator on 0.
    Matrix m = Matrix::Zero(3, 3);
    const double spectator = std::sqrt(0.5 - 2.0 * 0.04);
    m(0, 0) = Complex(spectator, 0.0);
    m(1, 1) = Complex(0.2, 0.0);
    m(2, 2) = Complex(0.2, 0.0);
    const auto s = qcorr::make_boson(m);
    const auto before = qcorr::schmidt_boson(s);
    const double entropy_before = qcorr::entropy_closed_form(before);

    const auto r = qcorr::degenerate_pair_rotation(s, 1, 2);
    EXPECT_NEAR(r.result.beta(0, 0).real(), spectator, 1e-12);
    EXPECT_NEAR(std::abs(r.result.beta(1, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.result.beta(1, 2) - Complex(0.2, 0.0)), 0.0, 1e-12);

    const auto after = qcorr::schmidt_boson(r.result);
    EXPECT_EQ(after.rank, before.rank);
    EXPECT_NEAR(qcorr::entropy_closed_form(after), entropy_before, 1e-10);
}

TEST(PairRotation, RejectsBadInputs) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = Complex(0.6, 0.0);
    m(1, 1) = Complex(std::sqrt(0.5 - 0.36), 0.0);
    const auto s = qcorr::make_boson(m);
    EXPECT_THROW(qcorr::degenerate_pair_rotation(s, 0, 1), std::invalid_argument);
    EXPECT_THROW(qcorr::degenerate_pair_rotation(s, 0, 0), std::invalid_argument);
    EXPECT_THROW(qcorr::degenerate_pair_rotation(s, 0, 5), std::invalid_argument);

    // Not in the canonical basis: off-diagonal weight.
    Matrix nd(2, 2);
    nd << Complex(0, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(0, 0);
    const auto sn = qcorr::make_boson(nd);
    EXPECT_THROW(qcorr::degenerate_pair_rotation(sn, 0, 1), std::invalid_argument);
}

}  // namespace
