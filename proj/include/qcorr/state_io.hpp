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

#ifndef QCORR_STATE_IO_HPP
#define QCORR_STATE_IO_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "qcorr/measures.hpp"
#include "qcorr/version.hpp"

namespace qcorr {

using Json = nlohmann::ordered_json;
using StateVariant = std::variant<DistinguishableState, FermionState, BosonState>;

// FNV-1a 64-bit hash over raw file bytes; cheap input fingerprint for reports.
inline std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string checksum_string(const std::string &bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

namespace detail {

inline Json matrix_to_json(const Matrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json &rows, int expect_rows, int expect_cols) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != expect_rows) {
        throw IngestError("state file: matrix row count does not match dims");
    }
    Matrix m(expect_rows, expect_cols);
    for (int i = 0; i < expect_rows; ++i) {
        const Json &row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != expect_cols) {
            throw IngestError("state file: matrix column count does not match dims");
        }
        for (int j = 0; j < expect_cols; ++j) {
            const Json &entry = row[j];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw IngestError("state file: matrix entries must be [re, im] number pairs");
            }
            m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

}  // namespace detail

// State file schema: {"family": ..., "dims": [n] or [n, m], "matrix": rows
// of [re, im] pairs}.  Identical-particle families take one dimension,
// distinguishable particles take two.
inline StateVariant state_from_json(const Json &doc, IngestOptions opt = {}) {
    if (!doc.is_object() || !doc.contains("family") || !doc.contains("dims") ||
        !doc.contains("matrix")) {
        throw IngestError("state file: expected an object with family, dims and matrix");
    }
    if (!doc["family"].is_string()) {
        throw IngestError("state file: family must be a string");
    }
    const std::string family = doc["family"].get<std::string>();
    const Json &dims = doc["dims"];
    if (!dims.is_array() || dims.empty() || dims.size() > 2) {
        throw IngestError("state file: dims must hold one or two mode counts");
    }
    for (const Json &d : dims) {
        if (!d.is_number_integer() || d.get<int>() < 1) {
            throw IngestError("state file: dims entries must be positive integers");
        }
    }
    if (family == "distinguishable") {
        if (dims.size() != 2) {
            throw IngestError("state file: distinguishable states need dims [n, m]");
        }
        const Matrix c = detail::matrix_from_json(doc["matrix"], dims[0].get<int>(),
                                                  dims[1].get<int>());
        return make_distinguishable(c, opt);
    }
    if (dims.size() != 1) {
        throw IngestError("state file: identical-particle states need dims [n]");
    }
    const int n = dims[0].get<int>();
    const Matrix m = detail::matrix_from_json(doc["matrix"], n, n);
    if (family == "fermion") {
        return make_fermion(m, opt);
    }
    if (family == "boson") {
        return make_boson(m, opt);
    }
    throw IngestError("state file: unknown family '" + family + "'");
}

inline StateVariant state_from_string(const std::string &text, IngestOptions opt = {}) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw IngestError(std::string("state file: invalid JSON: ") + e.what());
    }
    return state_from_json(doc, opt);
}

inline std::string read_file_bytes(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline StateVariant read_state_file(const std::string &path, IngestOptions opt = {}) {
    return state_from_string(read_file_bytes(path), opt);
}

inline Json state_to_json(const StateVariant &state) {
    Json doc;
    std::visit(
        [&doc](const auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DistinguishableState>) {
                doc["family"] = "distinguishable";
                doc["dims"] = {static_cast<int>(s.c.rows()), static_cast<int>(s.c.cols())};
                doc["matrix"] = detail::matrix_to_json(s.c);
            } else if constexpr (std::is_same_v<T, FermionState>) {
                doc["family"] = "fermion";
                doc["dims"] = {static_cast<int>(s.omega.rows())};
                doc["matrix"] = detail::matrix_to_json(s.omega);
            } else {
                doc["family"] = "boson";
                doc["dims"] = {static_cast<int>(s.beta.rows())};
                doc["matrix"] = detail::matrix_to_json(s.beta);
            }
        },
        state);
    return doc;
}

// Canonical on-disk rendering: two-space indent plus a trailing newline.
// Writing what was read back out reproduces the bytes exactly.
inline std::string to_canonical_text(const Json &doc) {
    return doc.dump(2) + "\n";
}

struct ReportOptions {
    bool emit_basis = false;
    bool bits = false;
};

inline Json report_to_json(const CorrelationReport &report, const CanonicalDecomposition &d,
                           const std::string &input_checksum, ReportOptions opt = {}) {
    const double unit = opt.bits ? std::log(2.0) : 1.0;
    Json doc;
    doc["tool"] = "qcorr";
    doc["version"] = kVersion;
    doc["input_checksum"] = input_checksum;
    doc["family"] = family_name(report.family);
    if (report.family == Family::distinguishable) {
        doc["dims"] = {report.rows, report.cols};
    } else {
        doc["dims"] = {report.rows};
    }
    doc["rank"] = report.rank;
    doc["correlated"] = report.correlated;
    doc["entropy_units"] = opt.bits ? "bits" : "nats";
    doc["entropy"] = report.entropy / unit;
    doc["entropy_floor"] = report.entropy_floor / unit;
    doc["entropy_ceiling"] = report.entropy_ceiling / unit;
    doc["grobe_k"] = report.grobe_k;
    doc["k_density"] = report.k_density;
    doc["det_measure"] = report.det_measure;
    Json coeffs = Json::array();
    for (Eigen::Index k = 0; k < d.coefficients.size(); ++k) {
        coeffs.push_back(d.coefficients(k));
    }
    doc["coefficients"] = std::move(coeffs);
    if (opt.emit_basis) {
        Json basis;
        basis["u"] = detail::matrix_to_json(d.u);
        if (d.v.has_value()) {
            basis["v"] = detail::matrix_to_json(*d.v);
        }
        doc["basis"] = std::move(basis);
    }
    return doc;
}

inline CorrelationReport analyze(const StateVariant &state) {
    return std::visit([](const auto &s) { return analyze(s); }, state);
}

inline CanonicalDecomposition decompose(const StateVariant &state) {
    return std::visit(
        [](const auto &s) -> CanonicalDecomposition {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DistinguishableState>) {
                return schmidt_distinguishable(s);
            } else if constexpr (std::is_same_v<T, FermionState>) {
                return slater_fermion(s);
            } else {
                return schmidt_boson(s);
            }
        },
        state);
}

}  // namespace qcorr

#endif  // QCORR_STATE_IO_HPP
