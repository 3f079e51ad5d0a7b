// Copyright 2026 The qctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCTL_JSON_IO_HPP
#define QCTL_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "qctl/linalg.hpp"

namespace qctl {

// Matrix schema: {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

// Kraus file: a JSON list of matrices in the schema above.
std::vector<Mat> kraus_from_json(const nlohmann::json& j);

// State / amplitude-list literal: semicolon-separated "re,im" pairs in basis
// order, e.g. "0.6,0;0.8,0".
Vec parse_amplitudes(const std::string& text);

}  // namespace qctl

#endif  // QCTL_JSON_IO_HPP
