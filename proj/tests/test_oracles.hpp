// Copyright 2026 The pancyc Authors
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

// Reference implementations used only by the tests. They are deliberately
// naive and share no code with the library algorithms they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "pancyc/graph.hpp"

namespace pancyc::testing_oracle {

// All simple cycles, by plain DFS from each root over larger vertices. Each
// cycle is reported once, as root, smaller neighbour, ...
inline std::vector<VertexCycle> all_cycles(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexCycle> out;
  std::vector<Vertex> path;
  std::vector<bool> on(n, false);
  std::function<void(Vertex, Vertex)> go = [&](Vertex root, Vertex v) {
    for (Vertex w : g.neighbors(v)) {
      if (w == root && path.size() >= 3 && path[1] < path.back()) {
        out.push_back(VertexCycle{path});
      }
      if (w > root && !on[w]) {
        on[w] = true;
        path.push_back(w);
        go(root, w);
        path.pop_back();
        on[w] = false;
      }
    }
  };
  for (Vertex r = 0; r < n; ++r) {
    path = {r};
    on[r] = true;
    go(r, r);
    on[r] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::set<std::size_t> spectrum(const Graph& g) {
  std::set<std::size_t> s;
  for (const auto& c : all_cycles(g)) s.insert(c.length());
  return s;
}

// Lengths of [3, n] hit by a list of closed intervals, by direct marking.
inline std::vector<std::size_t> unmarked(const std::vector<std::pair<long long, long long>>& ivs,
                                         std::size_t n) {
  std::vector<bool> hit(n + 1, false);
  for (auto [lo, hi] : ivs) {
    for (long long x = std::max(lo, 3LL); x <= hi && x <= static_cast<long long>(n); ++x) hit[x] = true;
  }
  std::vector<std::size_t> holes;
  for (std::size_t x = 3; x <= n; ++x) {
    if (!hit[x]) holes.push_back(x);
  }
  return holes;
}

}  // namespace pancyc::testing_oracle
