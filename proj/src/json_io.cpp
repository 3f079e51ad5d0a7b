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

#include "qctl/json_io.hpp"

#include <sstream>

namespace qctl {

nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Mat matrix_from_json(const nlohmann::json& j) {
  Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix json: data length mismatch");
  Mat m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++k)
      m(r, c) = Cplx(data[k][0].get<double>(), data[k][1].get<double>());
  return m;
}

std::vector<Mat> kraus_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("kraus json: expected a list");
  std::vector<Mat> out;
  for (const auto& e : j) out.push_back(matrix_from_json(e));
  return out;
}

Vec parse_amplitudes(const std::string& text) {
  std::vector<Cplx> amps;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    if (pair.empty()) continue;
    auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("amplitude literal: expected 're,im' pairs");
    amps.emplace_back(std::stod(pair.substr(0, comma)),
                      std::stod(pair.substr(comma + 1)));
  }
  if (amps.empty())
    throw std::invalid_argument("amplitude literal: no amplitudes given");
  Vec v(static_cast<Eigen::Index>(amps.size()));
  for (size_t i = 0; i < amps.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = amps[i];
  return v;
}

}  // namespace qctl
