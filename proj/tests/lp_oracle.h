// Copyright 2026 The dpcp Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
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

#pragma once

// Brute-force reference for small bounded LPs: enumerate every basis of
// A_eq together with every lower/upper placement of the non-basic variables,
// keep the feasible basic solutions and return the cheapest. Exponential,
// but exact and independent of any pivoting logic.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dpcp/lp.h"

namespace dpcp::testing {

struct VertexOracleResult {
  bool feasible = false;
  double objective = std::numeric_limits<double>::infinity();
  Vector x;
};

// Requires finite lower bounds and a full-row-rank A_eq.
inline VertexOracleResult EnumerateVertices(const LpProblem& p, double tol = 1e-9) {
  const int m = static_cast<int>(p.A_eq.rows());
  const int n = static_cast<int>(p.A_eq.cols());
  VertexOracleResult best;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = i;
  while (true) {
    Matrix ab(m, m);
    std::vector<int> nonbasic;
    for (int j = 0, k = 0; j < n; ++j) {
      if (k < m && basis[k] == j) {
        ab.col(k++) = p.A_eq.col(j);
      } else {
        nonbasic.push_back(j);
      }
    }
    Eigen::FullPivLU<Matrix> lu(ab);
    if (lu.isInvertible()) {
      std::vector<int> choices;
      for (int j : nonbasic) choices.push_back(std::isfinite(p.upper[j]) ? 2 : 1);
      std::vector<int> pick(nonbasic.size(), 0);
      while (true) {
        Vector x = Vector::Zero(n);
        for (std::size_t t = 0; t < nonbasic.size(); ++t) {
          const int j = nonbasic[t];
          x[j] = pick[t] == 0 ? p.lower[j] : p.upper[j];
        }
        const Vector xb = lu.solve(p.b_eq - p.A_eq * x);
        for (int k = 0; k < m; ++k) x[basis[k]] = xb[k];
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) ok = x[j] >= p.lower[j] - tol && x[j] <= p.upper[j] + tol;
        if (ok) {
          const double value = p.c.dot(x);
          if (!best.feasible || value < best.objective) best = {true, value, x};
        }
        std::size_t t = 0;
        while (t < pick.size() && ++pick[t] == choices[t]) pick[t++] = 0;
        if (t == pick.size()) break;
      }
    }
    int i = m - 1;
    while (i >= 0 && basis[i] == n - m + i) --i;
    if (i < 0) break;
    ++basis[i];
    for (int k = i + 1; k < m; ++k) basis[k] = basis[k - 1] + 1;
  }
  return best;
}

}  // namespace dpcp::testing
