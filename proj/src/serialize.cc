// Copyright 2026 The Epiphase Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epiphase/serialize.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace epiphase {

namespace {

Complex complex_from_json(const Json &j, const std::string &what) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::invalid_argument(what + ": entries must be numbers or [re, im] pairs");
}

std::string format_cell(double x, int precision) {
    if (std::abs(x) < 0.5 * std::pow(10.0, -precision)) {
        x = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

}  // namespace

Json to_json(PhasePoint point) { return Json::array({point.q, point.p}); }

Json to_json(const SymplecticMatrix &s) {
    const auto &e = s.entries();
    return Json::array({e[0], e[1], e[2], e[3]});
}

Json to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const RMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const RVector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Json to_json(const PhaseSpace &space) {
    Json points = Json::array();
    for (const PhasePoint &pt : space.points()) {
        points.push_back(to_json(pt));
    }
    Json striations = Json::array();
    for (const Striation &s : space.striations()) {
        Json lines = Json::array();
        for (const Line &l : s.lines) {
            Json pts = Json::array();
            for (const PhasePoint &pt : l.points) {
                pts.push_back(to_json(pt));
            }
            lines.push_back({{"a", l.a}, {"b", l.b}, {"c", l.c}, {"points", std::move(pts)}});
        }
        striations.push_back({{"id", s.id}, {"lines", std::move(lines)}});
    }
    return {{"schema", kSchemaVersion},
            {"d", space.dimension()},
            {"points", std::move(points)},
            {"striations", std::move(striations)}};
}

Json to_json(const SpecialSubgroup &subgroup) {
    Json elements = Json::array();
    for (std::size_t i = 0; i < subgroup.size(); ++i) {
        elements.push_back({{"label", subgroup.label(i)},
                            {"matrix", to_json(subgroup[i])},
                            {"trace", subgroup[i].trace()},
                            {"code", subgroup[i].code()}});
    }
    return {{"schema", kSchemaVersion},
            {"d", subgroup.dimension()},
            {"order", subgroup.size()},
            {"elements", std::move(elements)}};
}

Json to_json(const Channel &channel) {
    Json j = {{"name", channel.name()}, {"d", channel.dimension()}};
    if (channel.kraus()) {
        Json kraus = Json::array();
        for (const CMatrix &k : *channel.kraus()) {
            kraus.push_back(to_json(k));
        }
        j["kraus"] = std::move(kraus);
    }
    return j;
}

Json to_json(const PhaseSpace &space, const PrepRep &rep) {
    Json lines = Json::array();
    for (int l = 0; l < space.dimension(); ++l) {
        lines.push_back(rep.line_value(space, l));
    }
    return {{"striation", rep.striation}, {"line_values", std::move(lines)}, {"values", to_json(rep.values)}};
}

Json to_json(const PhaseSpace &space, const MeasRep &rep) {
    Json lines = Json::array();
    for (int l = 0; l < space.dimension(); ++l) {
        lines.push_back(rep.line_value(space, l));
    }
    return {{"striation", rep.striation}, {"line_values", std::move(lines)}, {"values", to_json(rep.values)}};
}

Json to_json(const SpecialSubgroup &subgroup, const TransRep &rep, bool full_table) {
    int i = subgroup.index_of(rep.symplectic);
    Json j = {{"symplectic", to_json(rep.symplectic)},
              {"label", i >= 0 ? subgroup.label(static_cast<std::size_t>(i)) : std::string("?")},
              {"class_values", to_json(rep.class_values)}};
    if (full_table) {
        j["table"] = to_json(rep.table);
    }
    return j;
}

CMatrix complex_matrix_from_json(const Json &j, const std::string &what) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument(what + ": expected a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array()) {
        throw std::invalid_argument(what + ": rows must be arrays");
    }
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::invalid_argument(what + ": row " + std::to_string(r) + " has the wrong length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], what);
        }
    }
    return m;
}

Channel channel_from_json(const Json &j, int d, const std::string &what) {
    if (!j.is_object()) {
        throw std::invalid_argument(what + ": expected an object");
    }
    auto check_dim = [&](const CMatrix &m, const std::string &name) {
        if (m.rows() != d || m.cols() != d) {
            throw std::invalid_argument(name + ": expected a " + std::to_string(d) + "x" + std::to_string(d) +
                                        " matrix");
        }
    };
    if (j.contains("unitary")) {
        CMatrix u = complex_matrix_from_json(j["unitary"], what + ".unitary");
        check_dim(u, what + ".unitary");
        return Channel::unitary(u);
    }
    if (j.contains("kraus")) {
        const Json &list = j["kraus"];
        if (!list.is_array() || list.empty()) {
            throw std::invalid_argument(what + ".kraus: expected a non-empty list of matrices");
        }
        std::vector<CMatrix> kraus;
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string name = what + ".kraus[" + std::to_string(k) + "]";
            kraus.push_back(complex_matrix_from_json(list[k], name));
            check_dim(kraus.back(), name);
        }
        return Channel::from_kraus(std::move(kraus));
    }
    if (j.contains("depolarizing")) {
        if (!j["depolarizing"].is_number()) {
            throw std::invalid_argument(what + ".depolarizing: expected a probability");
        }
        return Channel::depolarizing(d, j["depolarizing"].get<double>());
    }
    if (j.contains("identity")) {
        return Channel::identity(d);
    }
    throw std::invalid_argument(what + ": expected one of unitary, kraus, depolarizing, identity");
}

DecomposeInput decompose_input_from_json(const Json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("input: expected a JSON object");
    }
    if (j.contains("schema") && j["schema"] != kSchemaVersion) {
        throw std::invalid_argument("input: unsupported schema version " + j["schema"].dump());
    }
    if (!j.contains("d") || !j["d"].is_number_integer()) {
        throw std::invalid_argument("input: missing integer field \"d\"");
    }
    DecomposeInput in;
    in.d = j["d"].get<int>();
    auto square = [&](const char *key) {
        CMatrix m = complex_matrix_from_json(j[key], key);
        if (m.rows() != in.d || m.cols() != in.d) {
            throw std::invalid_argument(std::string(key) + ": expected a " + std::to_string(in.d) + "x" +
                                        std::to_string(in.d) + " matrix");
        }
        return m;
    };
    if (j.contains("density")) {
        in.density = square("density");
    }
    if (j.contains("povm_element")) {
        in.povm_element = square("povm_element");
    }
    if (j.contains("channels")) {
        if (!j["channels"].is_array()) {
            throw std::invalid_argument("channels: expected a list");
        }
        for (std::size_t k = 0; k < j["channels"].size(); ++k) {
            in.channels.push_back(channel_from_json(j["channels"][k], in.d, "channels[" + std::to_string(k) + "]"));
        }
    }
    if (j.contains("reconstruct")) {
        if (!j["reconstruct"].is_boolean()) {
            throw std::invalid_argument("reconstruct: expected true or false");
        }
        in.reconstruct = j["reconstruct"].get<bool>();
    }
    if (in.reconstruct && (!in.density || !in.povm_element)) {
        throw std::invalid_argument("reconstruct needs both \"density\" and \"povm_element\"");
    }
    return in;
}

std::string phase_space_diagram(const PhaseSpace &space, const RVector &values, int precision) {
    const int d = space.dimension();
    if (values.size() != space.point_count()) {
        throw std::invalid_argument("diagram needs one value per phase point");
    }
    std::vector<std::string> cells(static_cast<std::size_t>(space.point_count()));
    std::size_t width = 1;
    for (int i = 0; i < space.point_count(); ++i) {
        cells[static_cast<std::size_t>(i)] = format_cell(values(i), precision);
        width = std::max(width, cells[static_cast<std::size_t>(i)].size());
    }
    std::string rule = "+";
    for (int q = 0; q < d; ++q) {
        rule += std::string(width + 2, '-') + "+";
    }
    std::ostringstream out;
    out << rule << '\n';
    for (int p = d - 1; p >= 0; --p) {
        out << '|';
        for (int q = 0; q < d; ++q) {
            const std::string &c = cells[static_cast<std::size_t>(space.index({q, p}))];
            out << ' ' << c << std::string(width - c.size() + 1, ' ') << '|';
        }
        out << '\n' << rule << '\n';
    }
    return out.str();
}

}  // namespace epiphase
