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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pancyc/errors.hpp"

namespace pancyc {

using Vertex = std::uint32_t;

// Unordered pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge() = default;
  constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  constexpr bool touches(Vertex x) const noexcept { return u == x || v == x; }
  constexpr Vertex other(Vertex x) const noexcept { return x == u ? v : u; }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1. Adjacency lists are kept
// sorted, so neighbors() doubles as an ordered neighbor set.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) {
      g.check_pair(e.u, e.v);
      g.adj_[e.u].push_back(e.v);
      g.adj_[e.v].push_back(e.u);
    }
    for (auto& list : g.adj_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    std::size_t total = 0;
    for (const auto& list : g.adj_) total += list.size();
    g.m_ = total / 2;
    return g;
  }

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return m_; }

  const std::vector<Vertex>& neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= adj_.size() || v >= adj_.size() || u == v) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), target);
  }
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }

  // Returns false when the edge was already present.
  bool add_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return false;
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++m_;
    return true;
  }
  bool add_edge(Edge e) { return add_edge(e.u, e.v); }

  // Returns false when the edge was absent.
  bool remove_edge(Vertex u, Vertex v) {
    if (!has_edge(u, v)) return false;
    auto& au = adj_[u];
    au.erase(std::lower_bound(au.begin(), au.end(), v));
    auto& av = adj_[v];
    av.erase(std::lower_bound(av.begin(), av.end(), u));
    --m_;
    return true;
  }
  bool remove_edge(Edge e) { return remove_edge(e.u, e.v); }

  // Edges in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  // Appends an already-sorted neighbor. Only for generators that emit pairs
  // in lexicographic order.
  void append_sorted_edge(Vertex u, Vertex v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++m_;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(Vertex v) const {
    if (v >= adj_.size()) {
      throw OutOfRange("vertex " + std::to_string(v) + " out of range (n=" +
                       std::to_string(adj_.size()) + ")");
    }
  }
  void check_pair(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw OutOfRange("self-loop at vertex " + std::to_string(u));
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

// Dense membership set over 0..n-1.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t n) : bits_(n, 0) {}
  VertexMask(std::size_t n, std::span<const Vertex> members) : bits_(n, 0) {
    for (Vertex v : members) insert(v);
  }

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool contains(Vertex v) const noexcept { return v < bits_.size() && bits_[v] != 0; }
  void insert(Vertex v) {
    if (!bits_[v]) {
      bits_[v] = 1;
      ++count_;
    }
  }
  void erase(Vertex v) {
    if (v < bits_.size() && bits_[v]) {
      bits_[v] = 0;
      --count_;
    }
  }
  void insert_all(std::span<const Vertex> vs) {
    for (Vertex v : vs) insert(v);
  }
  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (Vertex v = 0; v < bits_.size(); ++v) {
      if (bits_[v]) out.push_back(v);
    }
    return out;
  }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

struct VertexPath {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  friend bool operator==(const VertexPath&, const VertexPath&) = default;
};

struct VertexCycle {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.size(); }
  friend bool operator==(const VertexCycle&, const VertexCycle&) = default;
  friend auto operator<=>(const VertexCycle& a, const VertexCycle& b) {
    return a.vertices <=> b.vertices;
  }
};

inline const std::vector<Vertex>& neighbors(const Graph& g, Vertex v) { return g.neighbors(v); }

// N_G(U): vertices outside U adjacent to some vertex of U.
inline std::vector<Vertex> external_neighborhood(const Graph& g, std::span<const Vertex> set) {
  VertexMask inside(g.vertex_count(), set);
  VertexMask seen(g.vertex_count());
  for (Vertex u : set) {
    for (Vertex w : g.neighbors(u)) {
      if (!inside.contains(w)) seen.insert(w);
    }
  }
  return seen.members();
}

inline bool all_distinct(std::span<const Vertex> vs, std::size_t n) {
  VertexMask seen(n);
  for (Vertex v : vs) {
    if (v >= n || seen.contains(v)) return false;
    seen.insert(v);
  }
  return true;
}

// Smallest vertex first, then the smaller of its two cycle neighbors.
inline VertexCycle canonical_cycle(const VertexCycle& c) {
  if (c.vertices.size() < 2) return c;
  const auto& vs = c.vertices;
  const std::size_t k = vs.size();
  const std::size_t start =
      static_cast<std::size_t>(std::min_element(vs.begin(), vs.end()) - vs.begin());
  const Vertex next = vs[(start + 1) % k];
  const Vertex prev = vs[(start + k - 1) % k];
  VertexCycle out;
  out.vertices.reserve(k);
  if (next <= prev) {
    for (std::size_t i = 0; i < k; ++i) out.vertices.push_back(vs[(start + i) % k]);
  } else {
    for (std::size_t i = 0; i < k; ++i) out.vertices.push_back(vs[(start + k - i) % k]);
  }
  return out;
}

inline bool check_path(const Graph& g, const VertexPath& p) {
  if (p.vertices.empty() || !all_distinct(p.vertices, g.vertex_count())) return false;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    if (!g.has_edge(p.vertices[i], p.vertices[i + 1])) return false;
  }
  return true;
}

inline bool check_cycle(const Graph& g, const VertexCycle& c) {
  const auto& vs = c.vertices;
  if (vs.size() < 3 || !all_distinct(vs, g.vertex_count())) return false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!g.has_edge(vs[i], vs[(i + 1) % vs.size()])) return false;
  }
  return true;
}

inline bool is_subgraph(const Graph& h, const Graph& g) {
  if (h.vertex_count() != g.vertex_count()) return false;
  for (const Edge& e : h.edges()) {
    if (!g.has_edge(e)) return false;
  }
  return true;
}

inline Graph graph_union(std::span<const Graph> parts) {
  if (parts.empty()) return Graph();
  std::vector<Edge> all;
  for (const Graph& g : parts) {
    auto es = g.edges();
    all.insert(all.end(), es.begin(), es.end());
  }
  return Graph::from_edges(parts.front().vertex_count(), all);
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.append_sorted_edge(u, v);
  }
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n));
  return g;
}

// Edge-list text format: "n m" header then one "u v" pair per line, u < v.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

// Reads one block and leaves the stream after its last edge.
inline Graph read_edge_list(std::istream& is) {
  long long n = -1, m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) throw ParseError("edge list: bad header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(is >> u >> v)) throw ParseError("edge list: expected " + std::to_string(m) + " edges");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw ParseError("edge list: invalid pair " + std::to_string(u) + " " + std::to_string(v));
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  Graph g = Graph::from_edges(static_cast<std::size_t>(n), edges);
  if (g.edge_count() != static_cast<std::size_t>(m)) throw ParseError("edge list: duplicate edges");
  return g;
}

// A whole document holding exactly one edge list.
inline Graph parse_edge_list(const std::string& text) {
  std::istringstream is(text);
  Graph g = read_edge_list(is);
  if (is >> std::ws; !is.eof()) throw ParseError("edge list: data after the last edge");
  return g;
}

}  // namespace pancyc
