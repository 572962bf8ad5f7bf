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

#ifndef EPIPHASE_SERIALIZE_H
#define EPIPHASE_SERIALIZE_H

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epiphase/reconstruct.h"

namespace epiphase {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// [q, p].
Json to_json(PhasePoint point);
/// Row-major [a, b, c, e].
Json to_json(const SymplecticMatrix &s);
/// Nested rows of [re, im] pairs.
Json to_json(const CMatrix &m);
Json to_json(const RMatrix &m);
Json to_json(const RVector &v);

Json to_json(const PhaseSpace &space);
Json to_json(const SpecialSubgroup &subgroup);
Json to_json(const Channel &channel);

/// Values are listed by point index q*d + p; line_values by line intercept.
Json to_json(const PhaseSpace &space, const PrepRep &rep);
Json to_json(const PhaseSpace &space, const MeasRep &rep);
/// Class values by point index of delta; the expanded table(beta, alpha) is
/// added when `full_table` is set.
Json to_json(const SpecialSubgroup &subgroup, const TransRep &rep, bool full_table = false);

/// Accepts nested rows whose entries are numbers or [re, im] pairs. Throws
/// std::invalid_argument naming `what` on malformed input.
CMatrix complex_matrix_from_json(const Json &j, const std::string &what);

/// One of {"unitary": M}, {"kraus": [M, ...]}, {"depolarizing": p} or
/// {"identity": true}.
Channel channel_from_json(const Json &j, int d, const std::string &what);

/// Input of the decompose command.
struct DecomposeInput {
    int d = 2;
    std::optional<CMatrix> density;
    std::vector<Channel> channels;
    std::optional<CMatrix> povm_element;
    bool reconstruct = false;
};

/// Throws std::invalid_argument on schema errors.
DecomposeInput decompose_input_from_json(const Json &j);

/// Grid with p = d - 1 on the top row and q increasing to the right, so the
/// bottom-left cell is (0, 0). `values` is indexed by point index.
std::string phase_space_diagram(const PhaseSpace &space, const RVector &values, int precision = 4);

}  // namespace epiphase

#endif
