// Copyright 2026 The lieprep Authors
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

#pragma once

// Independent brute-force closure used to cross-check the sector engine.

#include <Eigen/Dense>
#include <vector>

namespace testing_oracles {

// Brute-force closure: span of the seeds under repeated commutators, with
// rank taken from the SVD of the stacked real/imaginary parts.
inline int dense_closure_dimension(const std::vector<Eigen::MatrixXcd>& seeds) {
  std::vector<Eigen::MatrixXcd> span;
  auto rank_of = [](const std::vector<Eigen::MatrixXcd>& ms) {
    if (ms.empty()) return 0;
    const Eigen::Index d = ms[0].size();
    Eigen::MatrixXd stack(2 * d, static_cast<Eigen::Index>(ms.size()));
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const Eigen::Map<const Eigen::VectorXcd> v(ms[k].data(), d);
      stack.col(static_cast<Eigen::Index>(k)) << v.real(), v.imag();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) r += s[i] > 1e-9 * s[0];
    return r;
  };
  auto try_add = [&](const Eigen::MatrixXcd& m) {
    span.push_back(m);
    if (rank_of(span) < static_cast<int>(span.size())) {
      span.pop_back();
      return false;
    }
    return true;
  };
  for (const auto& s : seeds) try_add(s);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = span.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        grew = try_add(span[a] * span[b] - span[b] * span[a]) || grew;
  }
  return static_cast<int>(span.size());
}

}  // namespace testing_oracles
