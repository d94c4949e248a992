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

#include "qcorr/state_io.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "qcorr/random.hpp"

#ifndef QCORR_CLI_PATH
#error "QCORR_CLI_PATH must point at the built command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

using qcorr::Complex;
using qcorr::Matrix;

class TempDir {
  public:
    TempDir() {
        dir_ = fs::temp_directory_path() /
               ("qcorr_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    fs::path path(const std::string &name) const { return dir_ / name; }

  private:
    static inline int counter_ = 0;
    fs::path dir_;
};

void write_text(const fs::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(QCORR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string boson_file_text() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = Complex(0.5, 0.0);
    m(1, 1) = Complex(0.5, 0.0);
    const qcorr::StateVariant s = qcorr::make_boson(m);
    return qcorr::to_canonical_text(qcorr::state_to_json(s));
}

TEST(StateIo, RoundTripIsByteIdentical) {
    const std::string text = boson_file_text();
    const qcorr::StateVariant s = qcorr::state_from_string(text);
    EXPECT_EQ(qcorr::to_canonical_text(qcorr::state_to_json(s)), text);
}

TEST(StateIo, AllFamiliesRoundTrip) {
    const qcorr::StateVariant states[] = {
        qcorr::StateVariant(qcorr::random_distinguishable(3, 4, 2, 7)),
        qcorr::StateVariant(qcorr::random_fermion(4, 2, 8)),
        qcorr::StateVariant(qcorr::random_boson(3, 3, 9)),
    };
    for (const auto &s : states) {
        const std::string text = qcorr::to_canonical_text(qcorr::state_to_json(s));
        const qcorr::StateVariant back = qcorr::state_from_string(text);
        EXPECT_EQ(qcorr::to_canonical_text(qcorr::state_to_json(back)), text);
    }
}

TEST(StateIo, RejectsMalformedDocuments) {
    EXPECT_THROW(qcorr::state_from_string("not json"), qcorr::IngestError);
    EXPECT_THROW(qcorr::state_from_string("{}"), qcorr::IngestError);
    EXPECT_THROW(qcorr::state_from_string(R"({"family":"boson","dims":[2],"matrix":[]})"),
                 qcorr::IngestError);
    EXPECT_THROW(
        qcorr::state_from_string(
            R"({"family":"ghost","dims":[2],"matrix":[[[0,0],[0,0]],[[0,0],[0,0]]]})"),
        qcorr::IngestError);
    EXPECT_THROW(
        qcorr::state_from_string(
            R"({"family":"distinguishable","dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],[0,0]]]})"),
        qcorr::IngestError);
}

TEST(StateIo, ChecksumIsStable) {
    EXPECT_EQ(qcorr::checksum_string(""), "fnv1a64:cbf29ce484222325");
    EXPECT_EQ(qcorr::checksum_string("a"), qcorr::checksum_string("a"));
    EXPECT_NE(qcorr::checksum_string("a"), qcorr::checksum_string("b"));
}

TEST(Cli, AnalyzeWritesDeterministicReport) {
    TempDir tmp;
    write_text(tmp.path("state.json"), boson_file_text());
    const std::string out1 = tmp.path("r1.json").string();
    const std::string out2 = tmp.path("r2.json").string();
    ASSERT_EQ(run_cli("analyze " + tmp.path("state.json").string() + " --out " + out1), 0);
    ASSERT_EQ(run_cli("analyze " + tmp.path("state.json").string() + " --out " + out2), 0);
    EXPECT_EQ(qcorr::read_file_bytes(out1), qcorr::read_file_bytes(out2));

    const qcorr::Json report = qcorr::Json::parse(qcorr::read_file_bytes(out1));
    EXPECT_EQ(report["family"], "boson");
    EXPECT_EQ(report["rank"], 2);
    EXPECT_EQ(report["correlated"], true);
    EXPECT_NEAR(report["entropy"].get<double>(), std::log(2.0), 1e-12);
    EXPECT_NEAR(report["det_measure"].get<double>(), 1.0 / 16.0, 1e-14);
    EXPECT_EQ(report["entropy_units"], "nats");
}

TEST(Cli, BitsFlagConvertsEntropies) {
    TempDir tmp;
    write_text(tmp.path("state.json"), boson_file_text());
    const std::string out = tmp.path("r.json").string();
    ASSERT_EQ(run_cli("analyze " + tmp.path("state.json").string() + " --bits --out " + out), 0);
    const qcorr::Json report = qcorr::Json::parse(qcorr::read_file_bytes(out));
    EXPECT_EQ(report["entropy_units"], "bits");
    EXPECT_NEAR(report["entropy"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, EmitBasisReconstructsState) {
    TempDir tmp;
    write_text(tmp.path("state.json"), boson_file_text());
    const std::string out = tmp.path("r.json").string();
    ASSERT_EQ(run_cli("analyze " + tmp.path("state.json").string() + " --emit-basis --out " + out),
              0);
    const qcorr::Json report = qcorr::Json::parse(qcorr::read_file_bytes(out));
    ASSERT_TRUE(report.contains("basis"));
    const qcorr::Json &u_json = report["basis"]["u"];
    Matrix u(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            u(i, j) = Complex(u_json[i][j][0].get<double>(), u_json[i][j][1].get<double>());
        }
    }
    Matrix b = Matrix::Zero(2, 2);
    for (int k = 0; k < 2; ++k) {
        b(k, k) = Complex(report["coefficients"][k].get<double>(), 0.0);
    }
    const qcorr::StateVariant s = qcorr::state_from_string(boson_file_text());
    const Matrix beta = std::get<qcorr::BosonState>(s).beta;
    EXPECT_LT((u * b * u.transpose() - beta).norm(), 1e-10);
}

TEST(Cli, ExitCodesFollowTheContract) {
    TempDir tmp;
    write_text(tmp.path("garbage.json"), "this is not json\n");
    EXPECT_EQ(run_cli("analyze " + tmp.path("garbage.json").string()), 2);

    // Valid shape, wrong normalization.
    write_text(tmp.path("unnorm.json"),
               R"({"family":"boson","dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]})");
    EXPECT_EQ(run_cli("analyze " + tmp.path("unnorm.json").string()), 3);
    EXPECT_EQ(run_cli("analyze " + tmp.path("unnorm.json").string() + " --renormalize"), 0);

    // Symmetry-class violation inside a structurally valid file.
    write_text(tmp.path("asym.json"),
               R"({"family":"fermion","dims":[2],"matrix":[[[0,0],[0.6,0]],[[-0.4,0],[0,0]]]})");
    EXPECT_EQ(run_cli("analyze " + tmp.path("asym.json").string()), 2);

    EXPECT_EQ(run_cli("random fermion --dims 3 --rank 2"), 4);
    EXPECT_EQ(run_cli("detmax 9"), 4);
    EXPECT_EQ(run_cli("analyze"), 4);
    EXPECT_EQ(run_cli("analyze " + tmp.path("missing.json").string()), 2);
}

TEST(Cli, RandomIsSeedDeterministicAndAnalyzable) {
    TempDir tmp;
    const std::string s1 = tmp.path("s1.json").string();
    const std::string s2 = tmp.path("s2.json").string();
    ASSERT_EQ(run_cli("random fermion --dims 6 --rank 2 --seed 42 --out " + s1), 0);
    ASSERT_EQ(run_cli("random fermion --dims 6 --rank 2 --seed 42 --out " + s2), 0);
    EXPECT_EQ(qcorr::read_file_bytes(s1), qcorr::read_file_bytes(s2));

    const std::string report_path = tmp.path("r.json").string();
    ASSERT_EQ(run_cli("analyze " + s1 + " --out " + report_path), 0);
    const qcorr::Json report = qcorr::Json::parse(qcorr::read_file_bytes(report_path));
    EXPECT_EQ(report["rank"], 2);
    EXPECT_EQ(report["family"], "fermion");

    // Different seed, different bytes.
    const std::string s3 = tmp.path("s3.json").string();
    ASSERT_EQ(run_cli("random fermion --dims 6 --rank 2 --seed 43 --out " + s3), 0);
    EXPECT_NE(qcorr::read_file_bytes(s1), qcorr::read_file_bytes(s3));
}

TEST(Cli, ReportReRunReproducesNumericFields) {
    TempDir tmp;
    const std::string state = tmp.path("s.json").string();
    ASSERT_EQ(run_cli("random boson --dims 5 --rank 3 --seed 11 --out " + state), 0);
    const std::string r1 = tmp.path("r1.json").string();
    const std::string r2 = tmp.path("r2.json").string();
    ASSERT_EQ(run_cli("analyze " + state + " --out " + r1), 0);
    ASSERT_EQ(run_cli("analyze " + state + " --out " + r2), 0);
    const qcorr::Json a = qcorr::Json::parse(qcorr::read_file_bytes(r1));
    const qcorr::Json b = qcorr::Json::parse(qcorr::read_file_bytes(r2));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a["input_checksum"], b["input_checksum"]);
}

TEST(Cli, VerifyAcceptsValidStateAndFlagsCorruption) {
    TempDir tmp;
    const std::string state = tmp.path("s.json").string();
    ASSERT_EQ(run_cli("random distinguishable --dims 4,3 --seed 5 --out " + state), 0);
    EXPECT_EQ(run_cli("verify " + state + " --trials 20 --seed 1"), 0);

    write_text(tmp.path("bad.json"), "{\"family\": \"boson\"}");
    EXPECT_EQ(run_cli("verify " + tmp.path("bad.json").string()), 2);
}

TEST(Cli, DetmaxConfirmsSmallSizes) {
    EXPECT_EQ(run_cli("detmax 2 --trials 500"), 0);
    EXPECT_EQ(run_cli("detmax 6 --trials 500 --seed 7"), 0);
}

}  // namespace
