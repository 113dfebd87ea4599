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
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "pancyc/cycles.hpp"
#include "pancyc/errors.hpp"
#include "pancyc/graph.hpp"

namespace pancyc {

// 2^{k+1} - 1
inline std::uint64_t shi_cycle_bound(std::uint64_t k) {
  if (k >= 63) throw OutOfRange("excess too large for the cycle bound");
  return (std::uint64_t{1} << (k + 1)) - 1;
}

// Counts cycles against the bound; needs |E| >= |V|.
inline bool check_shi(const Graph& g, std::size_t cap = kDefaultCycleCap) {
  if (g.edge_count() < g.vertex_count()) throw OutOfRange("check_shi needs at least n edges");
  const std::uint64_t bound = shi_cycle_bound(g.edge_count() - g.vertex_count());
  if (bound >= cap) return count_simple_cycles(g, cap) <= bound;
  try {
    return count_simple_cycles(g, static_cast<std::size_t>(bound)) <= bound;
  } catch (const CapExceeded&) {
    return false;
  }
}

inline double pex_lower_bound(std::size_t n) {
  if (n < 3) throw OutOfRange("pex_lower_bound needs n >= 3");
  return std::log2(static_cast<double>(n - 1)) - 1.0;
}

inline constexpr std::size_t kPexMaxN = 9;

// Cycle lengths of a graph on at most 16 vertices given as neighbour masks,
// by DP over (visited set, end vertex) with the lowest vertex as root.
inline std::uint32_t tiny_spectrum_mask(const std::vector<std::uint32_t>& adj) {
  const std::size_t n = adj.size();
  std::uint32_t lengths = 0;  // bit l set when an l-cycle exists
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);  // end vertices per visited set
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint32_t above = ~((std::uint32_t{2} << r) - 1);  // vertices > r
    std::fill(reach.begin(), reach.end(), 0);
    reach[std::size_t{1} << r] = std::uint32_t{1} << r;
    // Masks containing r only grow, so increasing order is topological.
    for (std::size_t mask = std::size_t{1} << r; mask < reach.size(); ++mask) {
      std::uint32_t ends = reach[mask];
      if (!ends || !((mask >> r) & 1)) continue;
      const int size = std::popcount(static_cast<std::uint32_t>(mask));
      while (ends) {
        const int v = std::countr_zero(ends);
        ends &= ends - 1;
        if (size >= 3 && ((adj[v] >> r) & 1)) lengths |= std::uint32_t{1} << size;
        std::uint32_t next = adj[v] & above & ~static_cast<std::uint32_t>(mask);
        while (next) {
          const int w = std::countr_zero(next);
          next &= next - 1;
          reach[mask | (std::size_t{1} << w)] |= std::uint32_t{1} << w;
        }
      }
    }
  }
  return lengths;
}

inline bool tiny_pancyclic(const std::vector<std::uint32_t>& adj) {
  const std::size_t n = adj.size();
  const std::uint32_t want = ((std::uint32_t{2} << n) - 1) & ~std::uint32_t{7};  // bits 3..n
  return (tiny_spectrum_mask(adj) & want) == want;
}

struct PexResult {
  std::size_t n = 0;
  std::optional<std::size_t> exact;
  double lower_bound = 0;
  std::string method;  // "oracle" or "bound-only"
  std::size_t hamilton_cycles = 0;  // branches searched
  std::size_t subsets_tested = 0;
};

namespace detail {

// Hamilton cycles of a tiny graph through vertex 0, each once (second
// vertex smaller than the last).
inline std::vector<std::vector<Vertex>> tiny_hamilton_cycles(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> path{0};
  std::vector<bool> on(n, false);
  on[0] = true;
  auto go = [&](auto&& self) -> void {
    const Vertex v = path.back();
    if (path.size() == n) {
      if (g.has_edge(v, 0) && path[1] < path.back()) out.push_back(path);
      return;
    }
    for (Vertex w : g.neighbors(v)) {
      if (on[w]) continue;
      on[w] = true;
      path.push_back(w);
      self(self);
      path.pop_back();
      on[w] = false;
    }
  };
  if (n >= 3) go(go);
  return out;
}

}  // namespace detail

// Minimum number of chords beyond n in a pancyclic spanning subgraph of the
// host. Every pancyclic subgraph contains a Hamilton cycle of the host, so the
// search branches on those (one suffices for K_n by symmetry) and tries chord
// sets in increasing size.
inline PexResult pex_exact_tiny(std::size_t n, const Graph& host) {
  if (host.vertex_count() != n) throw OutOfRange("host has the wrong vertex count");
  if (n < 3) throw OutOfRange("pex needs n >= 3");
  if (n > kPexMaxN) throw OutOfRange("pex_exact_tiny supports n <= " + std::to_string(kPexMaxN));
  PexResult res;
  res.n = n;
  res.lower_bound = pex_lower_bound(n);

  auto to_masks = [n](const std::vector<Edge>& es) {
    std::vector<std::uint32_t> adj(n, 0);
    for (const Edge& e : es) {
      adj[e.u] |= std::uint32_t{1} << e.v;
      adj[e.v] |= std::uint32_t{1} << e.u;
    }
    return adj;
  };
  const std::vector<Edge> host_edges = host.edges();
  if (!tiny_pancyclic(to_masks(host_edges))) throw HostNotPancyclic("host graph is not pancyclic");

  auto cycles = detail::tiny_hamilton_cycles(host);
  if (host.edge_count() == n * (n - 1) / 2) cycles.resize(1);
  res.hamilton_cycles = cycles.size();
  res.method = "oracle";

  std::vector<std::size_t> index_of(n * n, 0);
  for (std::size_t i = 0; i < host_edges.size(); ++i) index_of[host_edges[i].u * n + host_edges[i].v] = i;
  std::unordered_set<std::uint64_t> seen;  // edge-set bitmasks already tested

  for (std::size_t k = 0; k + n <= host_edges.size(); ++k) {
    for (const auto& hc : cycles) {
      std::vector<Edge> ring;
      std::uint64_t ring_bits = 0;
      for (std::size_t i = 0; i < n; ++i) {
        ring.emplace_back(hc[i], hc[(i + 1) % n]);
        ring_bits |= std::uint64_t{1} << index_of[ring.back().u * n + ring.back().v];
      }
      std::vector<Edge> chords;
      for (const Edge& e : host_edges) {
        if (!((ring_bits >> index_of[e.u * n + e.v]) & 1)) chords.push_back(e);
      }
      if (k > chords.size()) continue;
      // All k-subsets of chords, as index combinations.
      std::vector<std::size_t> pick(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        std::uint64_t bits = ring_bits;
        std::vector<Edge> es = ring;
        for (std::size_t i : pick) {
          es.push_back(chords[i]);
          bits |= std::uint64_t{1} << index_of[chords[i].u * n + chords[i].v];
        }
        if (seen.insert(bits).second) {
          ++res.subsets_tested;
          if (tiny_pancyclic(to_masks(es))) {
            res.exact = k;
            return res;
          }
        }
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == chords.size() - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  throw HostNotPancyclic("no pancyclic spanning subgraph found");
}

inline nlohmann::json to_json(const PexResult& r) {
  nlohmann::json j = {{"n", r.n}, {"lower_bound", r.lower_bound}, {"method", r.method},
                      {"hamilton_cycles", r.hamilton_cycles}, {"subsets_tested", r.subsets_tested}};
  j["exact"] = r.exact ? nlohmann::json(*r.exact) : nlohmann::json(nullptr);
  return j;
}

}  // namespace pancyc
