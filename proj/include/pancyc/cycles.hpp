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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <vector>

#include "pancyc/errors.hpp"
#include "pancyc/graph.hpp"

namespace pancyc {

// Default cap on enumerated cycles.
inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

// The 2-core of a graph with every maximal path of degree-2 vertices
// collapsed into a single weighted "chain". Cycles of the original graph are
// in bijection with cycles of this multigraph (plus the pure cycle
// components, which have no branch vertex at all).
struct Kernel {
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  struct Chain {
    std::uint32_t a = 0;  // kernel node index
    std::uint32_t b = 0;
    std::vector<Vertex> interior;  // ordered from a to b

    std::size_t weight() const noexcept { return interior.size() + 1; }
    bool loop() const noexcept { return a == b; }
  };

  struct Incidence {
    std::uint32_t chain;
    std::uint32_t other;
    bool forward;  // traversed from chain.a to chain.b
  };

  std::size_t n = 0;
  std::vector<Vertex> nodes;  // original ids, ascending
  std::vector<Chain> chains;
  std::vector<std::vector<Incidence>> incidence;
  std::vector<std::vector<Vertex>> pure_cycles;
  std::size_t core_size = 0;
};

inline Kernel build_kernel(const Graph& g) {
  const std::size_t n = g.vertex_count();
  Kernel k;
  k.n = n;

  std::vector<std::size_t> deg(n);
  std::vector<char> alive(n, 1);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w] && --deg[w] == 1) stack.push_back(w);
    }
  }

  std::vector<std::uint32_t> index(n, Kernel::npos);
  for (Vertex v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    ++k.core_size;
    if (deg[v] >= 3) {
      index[v] = static_cast<std::uint32_t>(k.nodes.size());
      k.nodes.push_back(v);
    }
  }
  k.incidence.resize(k.nodes.size());

  std::vector<char> interior_seen(n, 0);
  auto core_neighbors = [&](Vertex v) {
    std::vector<Vertex> out;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w]) out.push_back(w);
    }
    return out;
  };

  for (std::uint32_t ai = 0; ai < k.nodes.size(); ++ai) {
    const Vertex a = k.nodes[ai];
    for (Vertex first : core_neighbors(a)) {
      if (index[first] != Kernel::npos) {
        // Direct edge between two branch vertices.
        if (a < first) {
          k.chains.push_back({ai, index[first], {}});
        }
        continue;
      }
      if (interior_seen[first]) continue;
      Kernel::Chain chain;
      chain.a = ai;
      Vertex prev = a;
      Vertex cur = first;
      while (index[cur] == Kernel::npos) {
        interior_seen[cur] = 1;
        chain.interior.push_back(cur);
        const auto nb = core_neighbors(cur);
        const Vertex next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
      }
      chain.b = index[cur];
      k.chains.push_back(std::move(chain));
    }
  }

  for (std::uint32_t c = 0; c < k.chains.size(); ++c) {
    const auto& ch = k.chains[c];
    k.incidence[ch.a].push_back({c, ch.b, true});
    k.incidence[ch.b].push_back({c, ch.a, false});
  }

  for (Vertex v = 0; v < n; ++v) {
    if (!alive[v] || index[v] != Kernel::npos || interior_seen[v]) continue;
    std::vector<Vertex> cyc;
    Vertex prev = core_neighbors(v)[0];
    Vertex cur = v;
    do {
      interior_seen[cur] = 1;
      cyc.push_back(cur);
      const auto nb = core_neighbors(cur);
      const Vertex next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    } while (cur != v);
    k.pure_cycles.push_back(std::move(cyc));
  }
  return k;
}

namespace detail {

struct ChainStep {
  std::uint32_t chain;
  bool forward;
};

inline VertexCycle expand_cycle(const Kernel& k, std::uint32_t root,
                                std::span<const ChainStep> steps) {
  VertexCycle c;
  std::uint32_t at = root;
  for (const ChainStep& s : steps) {
    const auto& ch = k.chains[s.chain];
    c.vertices.push_back(k.nodes[at]);
    if (s.forward) {
      c.vertices.insert(c.vertices.end(), ch.interior.begin(), ch.interior.end());
      at = ch.b;
    } else {
      c.vertices.insert(c.vertices.end(), ch.interior.rbegin(), ch.interior.rend());
      at = ch.a;
    }
  }
  return c;
}

// Visits every simple cycle of the kernel exactly once. The cycle is rooted
// at its smallest kernel node; of the two traversal directions the one whose
// first chain id is smaller is reported.
template <typename Visit>
void for_each_kernel_cycle(const Kernel& k, Visit&& visit) {
  const std::size_t nodes = k.nodes.size();
  std::vector<char> on_path(nodes, 0);
  std::vector<ChainStep> steps;

  std::function<void(std::uint32_t, std::uint32_t, std::size_t)> dfs =
      [&](std::uint32_t root, std::uint32_t x, std::size_t len) {
        for (const auto& inc : k.incidence[x]) {
          const auto& ch = k.chains[inc.chain];
          if (inc.other == root) {
            if (steps.empty()) {
              if (ch.loop() && inc.forward) {
                steps.push_back({inc.chain, true});
                visit(root, std::span<const ChainStep>(steps), ch.weight());
                steps.pop_back();
              }
            } else if (inc.chain != steps.front().chain && steps.front().chain < inc.chain) {
              steps.push_back({inc.chain, inc.forward});
              visit(root, std::span<const ChainStep>(steps), len + ch.weight());
              steps.pop_back();
            }
            continue;
          }
          if (inc.other < root || on_path[inc.other]) continue;
          on_path[inc.other] = 1;
          steps.push_back({inc.chain, inc.forward});
          dfs(root, inc.other, len + ch.weight());
          steps.pop_back();
          on_path[inc.other] = 0;
        }
      };

  for (std::uint32_t r = 0; r < nodes; ++r) {
    on_path[r] = 1;
    dfs(r, r, 0);
    on_path[r] = 0;
  }
}

}  // namespace detail

// Calls visit(length) for each simple cycle; throws CapExceeded once more
// than cap cycles have been seen.
template <typename Visit>
void for_each_cycle_length(const Graph& g, std::size_t cap, Visit&& visit) {
  const Kernel k = build_kernel(g);
  std::size_t count = 0;
  auto bump = [&] {
    if (++count > cap) throw CapExceeded(cap);
  };
  for (const auto& pc : k.pure_cycles) {
    bump();
    visit(pc.size());
  }
  detail::for_each_kernel_cycle(
      k, [&](std::uint32_t, std::span<const detail::ChainStep>, std::size_t len) {
        bump();
        visit(len);
      });
}

// All simple cycles in canonical form, sorted.
inline std::vector<VertexCycle> enumerate_simple_cycles(const Graph& g,
                                                        std::size_t cap = kDefaultCycleCap) {
  const Kernel k = build_kernel(g);
  std::vector<VertexCycle> out;
  auto bump = [&] {
    if (out.size() >= cap) throw CapExceeded(cap);
  };
  for (const auto& pc : k.pure_cycles) {
    bump();
    out.push_back(canonical_cycle(VertexCycle{pc}));
  }
  detail::for_each_kernel_cycle(
      k, [&](std::uint32_t root, std::span<const detail::ChainStep> steps, std::size_t) {
        bump();
        out.push_back(canonical_cycle(detail::expand_cycle(k, root, steps)));
      });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t count_simple_cycles(const Graph& g, std::size_t cap = kDefaultCycleCap) {
  std::size_t count = 0;
  for_each_cycle_length(g, cap, [&](std::size_t) { ++count; });
  return count;
}

// L(G) by exhaustive enumeration.
inline std::set<std::size_t> cycle_spectrum_bruteforce(const Graph& g,
                                                       std::size_t cap = kDefaultCycleCap) {
  std::set<std::size_t> lengths;
  for_each_cycle_length(g, cap, [&](std::size_t len) { lengths.insert(len); });
  return lengths;
}

// L(G) by an exact per-length decision search over the kernel: for every
// candidate length a backtracking search either finds a cycle of exactly
// that length or exhausts the search space. Pruning uses a lower bound on
// the distance back to the root and an upper bound on the vertices still
// reachable. node_cap bounds the work per length; exceeding it throws
// CapExceeded because the length would be left undecided.
inline std::set<std::size_t> cycle_spectrum_search(const Graph& g,
                                                   std::size_t node_cap = 50'000'000) {
  const Kernel k = build_kernel(g);
  const std::size_t nodes = k.nodes.size();
  std::vector<char> found(g.vertex_count() + 1, 0);
  for (const auto& pc : k.pure_cycles) found[pc.size()] = 1;
  if (nodes == 0) {
    std::set<std::size_t> out;
    for (std::size_t l = 3; l < found.size(); ++l)
      if (found[l]) out.insert(l);
    return out;
  }

  // Vertices available to cycles rooted at r (nodes >= r, chains inside).
  std::vector<std::size_t> room(nodes, 0);
  for (std::uint32_t r = 0; r < nodes; ++r) {
    std::size_t total = nodes - r;
    for (const auto& ch : k.chains) {
      if (ch.a >= r && ch.b >= r) total += ch.interior.size();
    }
    room[r] = total;
  }

  // Incidence lists sorted by chain weight, both directions.
  std::vector<std::vector<Kernel::Incidence>> light(k.incidence), heavy(k.incidence);
  for (std::uint32_t x = 0; x < nodes; ++x) {
    auto by_weight = [&](const Kernel::Incidence& p, const Kernel::Incidence& q) {
      const auto wp = k.chains[p.chain].weight(), wq = k.chains[q.chain].weight();
      return wp != wq ? wp < wq : p.chain < q.chain;
    };
    std::sort(light[x].begin(), light[x].end(), by_weight);
    heavy[x] = light[x];
    std::reverse(heavy[x].begin(), heavy[x].end());
  }

  std::vector<char> visited(nodes, 0), used(k.chains.size(), 0);
  std::vector<std::size_t> dist(nodes);
  const std::size_t inf = std::numeric_limits<std::size_t>::max() / 4;

  auto distances_to = [&](std::uint32_t r) {
    std::fill(dist.begin(), dist.end(), inf);
    using Item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[r] = 0;
    pq.push({0, r});
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (d != dist[x]) continue;
      for (const auto& inc : k.incidence[x]) {
        if (inc.other < r) continue;
        const std::size_t nd = d + k.chains[inc.chain].weight();
        if (nd < dist[inc.other]) {
          dist[inc.other] = nd;
          pq.push({nd, inc.other});
        }
      }
    }
  };

  auto supply = [&](std::uint32_t r, std::uint32_t at) {
    std::size_t total = 0;
    for (std::uint32_t x = r; x < nodes; ++x) {
      if (!visited[x]) ++total;
    }
    for (std::uint32_t c = 0; c < k.chains.size(); ++c) {
      if (used[c]) continue;
      const auto& ch = k.chains[c];
      if (ch.a < r || ch.b < r) continue;
      auto open = [&](std::uint32_t x) { return !visited[x] || x == at || x == r; };
      if (open(ch.a) && open(ch.b)) total += ch.interior.size();
    }
    return total;
  };

  std::size_t budget_left = 0;
  std::uint32_t root = 0;
  std::size_t target = 0;
  std::uint32_t first_chain = 0;
  const std::vector<std::vector<Kernel::Incidence>>* order = &light;

  std::function<bool(std::uint32_t, std::size_t, std::size_t)> dfs =
      [&](std::uint32_t x, std::size_t len, std::size_t depth) -> bool {
    if (budget_left-- == 0) throw CapExceeded(node_cap);
    for (const auto& inc : (*order)[x]) {
      if (used[inc.chain]) continue;
      const auto& ch = k.chains[inc.chain];
      if (inc.other == root) {
        const bool closes = depth == 0 ? ch.loop() : inc.chain != first_chain;
        if (!closes) continue;
        const std::size_t total = len + ch.weight();
        if (total < found.size()) found[total] = 1;
        if (total == target) return true;
        continue;
      }
      if (inc.other < root || visited[inc.other]) continue;
      const std::size_t next = len + ch.weight();
      if (next + dist[inc.other] > target) continue;
      visited[inc.other] = 1;
      used[inc.chain] = 1;
      if (depth == 0) first_chain = inc.chain;
      bool hit = false;
      if (next + 1 + supply(root, inc.other) >= target) hit = dfs(inc.other, next, depth + 1);
      visited[inc.other] = 0;
      used[inc.chain] = 0;
      if (hit) return true;
    }
    return false;
  };

  const std::size_t max_len = found.size() - 1;
  for (std::size_t want = 3; want <= max_len; ++want) {
    if (found[want]) continue;
    target = want;
    budget_left = node_cap;
    order = want * 2 > k.core_size ? &heavy : &light;
    for (root = 0; root < nodes && !found[want]; ++root) {
      if (room[root] < want) break;
      distances_to(root);
      visited[root] = 1;
      dfs(root, 0, 0);
      visited[root] = 0;
    }
  }

  std::set<std::size_t> out;
  for (std::size_t l = 3; l <= max_len; ++l)
    if (found[l]) out.insert(l);
  return out;
}

}  // namespace pancyc
