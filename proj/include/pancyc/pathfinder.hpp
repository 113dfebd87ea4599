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
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "pancyc/errors.hpp"
#include "pancyc/graph.hpp"
#include "pancyc/rng.hpp"

namespace pancyc {

struct SearchBudget {
  std::size_t max_restarts = 50;
  std::size_t max_steps = 0;  // per restart; 0 means 20 n
  std::uint64_t seed = 0;

  std::size_t steps_for(std::size_t n) const { return max_steps != 0 ? max_steps : 20 * n; }

  // Same limits, independent random stream.
  SearchBudget salted(std::uint64_t salt) const {
    SearchBudget b = *this;
    b.seed = mix_seed(seed, salt);
    return b;
  }
};

struct ExpanderCore {
  std::vector<Vertex> vertices;  // U*, ascending
  VertexMask mask;
  double beta = 0.0;             // effective beta
  double degree_threshold = 0.0; // 1/(3 beta)
  std::size_t host_size = 0;     // |U|
  std::vector<std::vector<Vertex>> peel_log;

  std::size_t size() const noexcept { return vertices.size(); }
  bool contains(Vertex v) const noexcept { return mask.contains(v); }

  // Arity of the complete trees embedded in the core, 1/(5 beta).
  std::size_t tree_arity() const {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(1.0 / (5.0 * beta))));
  }
};

// Peels, in rounds, every vertex whose degree into the surviving set is below
// 1/(3 beta). Without an explicit beta the effective value is chosen so that
// the threshold is half the average degree of g[U]. Success requires
// |U*| >= (1 - beta)|U|.
inline ExpanderCore extract_core(const Graph& g, std::span<const Vertex> set,
                                 std::optional<double> beta = std::nullopt) {
  const std::size_t n = g.vertex_count();
  ExpanderCore core;
  core.host_size = set.size();
  core.mask = VertexMask(n, set);
  if (set.empty()) throw CoreTooSmall("empty host set");

  std::vector<std::size_t> deg(n, 0);
  std::size_t twice_edges = 0;
  for (Vertex v : set) {
    for (Vertex w : g.neighbors(v)) {
      if (core.mask.contains(w)) ++deg[v];
    }
    twice_edges += deg[v];
  }
  const double avg = static_cast<double>(twice_edges) / static_cast<double>(set.size());
  if (beta) {
    core.beta = *beta;
  } else {
    core.beta = avg > 0 ? 2.0 / (3.0 * avg) : 1.0;
  }
  core.degree_threshold = 1.0 / (3.0 * core.beta);

  std::vector<Vertex> alive(set.begin(), set.end());
  while (true) {
    std::vector<Vertex> drop;
    for (Vertex v : alive) {
      if (static_cast<double>(deg[v]) < core.degree_threshold) drop.push_back(v);
    }
    if (drop.empty()) break;
    for (Vertex v : drop) core.mask.erase(v);
    for (Vertex v : drop) {
      for (Vertex w : g.neighbors(v)) {
        if (core.mask.contains(w)) --deg[w];
      }
    }
    std::erase_if(alive, [&](Vertex v) { return !core.mask.contains(v); });
    core.peel_log.push_back(std::move(drop));
  }
  core.vertices = core.mask.members();
  const double need = (1.0 - core.beta) * static_cast<double>(set.size());
  if (static_cast<double>(core.vertices.size()) < need) {
    throw CoreTooSmall("core has " + std::to_string(core.vertices.size()) + " of " +
                       std::to_string(set.size()) + " vertices");
  }
  return core;
}

struct ExpansionSpotCheck {
  std::size_t samples = 0;
  std::size_t failures = 0;
  bool ok() const noexcept { return failures == 0; }
};

// Samples random W inside the core with 1 <= |W| <= max_size and checks
// |N(W)| >= alpha |W| within g[core].
inline ExpansionSpotCheck spot_check_expansion(const Graph& g, const ExpanderCore& core,
                                               std::size_t max_size, double alpha,
                                               std::size_t samples, std::uint64_t seed) {
  ExpansionSpotCheck out;
  if (core.vertices.empty() || max_size == 0) return out;
  Rng rng(seed);
  std::vector<Vertex> pool = core.vertices;
  const std::size_t cap = std::min(max_size, pool.size());
  VertexMask inside(g.vertex_count());
  VertexMask hit(g.vertex_count());
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t k = 1 + rng.below(cap);
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    for (std::size_t i = 0; i < k; ++i) inside.insert(pool[i]);
    std::size_t count = 0;
    std::vector<Vertex> touched;
    for (std::size_t i = 0; i < k; ++i) {
      for (Vertex w : g.neighbors(pool[i])) {
        if (core.contains(w) && !inside.contains(w) && !hit.contains(w)) {
          hit.insert(w);
          touched.push_back(w);
          ++count;
        }
      }
    }
    ++out.samples;
    if (static_cast<double>(count) < alpha * static_cast<double>(k)) ++out.failures;
    for (Vertex w : touched) hit.erase(w);
    for (std::size_t i = 0; i < k; ++i) inside.erase(pool[i]);
  }
  return out;
}

struct TreeEmbedding {
  VertexPath stem;                 // starts at the root argument
  std::vector<Vertex> leaves;
  std::vector<Vertex> tree_vertices;  // tree part, excluding the stem end
  std::vector<std::pair<Vertex, Vertex>> parent;  // (child, parent), tree part only

  Vertex tree_root() const { return stem.back(); }

  // Root-to-leaf path (stem followed by the tree branch).
  VertexPath path_to(Vertex leaf) const {
    std::vector<Vertex> branch;
    Vertex cur = leaf;
    while (cur != tree_root()) {
      branch.push_back(cur);
      auto it = std::find_if(parent.begin(), parent.end(),
                             [&](const auto& pc) { return pc.first == cur; });
      if (it == parent.end()) throw OutOfRange("vertex is not in the tree");
      cur = it->second;
    }
    VertexPath p = stem;
    p.vertices.insert(p.vertices.end(), branch.rbegin(), branch.rend());
    return p;
  }
};

namespace detail {

inline bool usable(const ExpanderCore& core, const VertexMask& blocked, const VertexMask& taken,
                   Vertex v) {
  return core.contains(v) && !blocked.contains(v) && !taken.contains(v);
}

// Self-avoiding walk of exactly `len` edges from `from`, with backtracking.
inline std::optional<std::vector<Vertex>> random_walk_path(
    const Graph& g, Vertex from, std::size_t len, const std::function<bool(Vertex)>& allowed,
    VertexMask& taken, Rng& rng, std::size_t step_limit) {
  std::vector<Vertex> path{from};
  taken.insert(from);
  if (len == 0) return path;
  std::vector<std::vector<Vertex>> options;
  options.reserve(len);
  auto fill = [&](Vertex v) {
    std::vector<Vertex> opts;
    for (Vertex w : g.neighbors(v)) {
      if (allowed(w) && !taken.contains(w)) opts.push_back(w);
    }
    rng.shuffle(std::span<Vertex>(opts));
    return opts;
  };
  options.push_back(fill(from));
  std::size_t steps = 0;
  while (!options.empty()) {
    if (++steps > step_limit) break;
    auto& opts = options.back();
    while (!opts.empty() && taken.contains(opts.back())) opts.pop_back();
    if (opts.empty()) {
      options.pop_back();
      if (path.size() > 1) {
        taken.erase(path.back());
        path.pop_back();
      } else {
        break;
      }
      continue;
    }
    const Vertex w = opts.back();
    opts.pop_back();
    path.push_back(w);
    taken.insert(w);
    if (path.size() == len + 1) return path;
    options.push_back(fill(w));
  }
  for (Vertex v : path) taken.erase(v);
  return std::nullopt;
}

}  // namespace detail

// Stem path of `stem` edges starting at root, then a complete arity-ary tree
// of the given depth hanging from the stem's far end. Vertices are drawn from
// core minus blocked.
inline TreeEmbedding embed_leafy_tree(const ExpanderCore& core, const Graph& g, Vertex root,
                                      std::size_t arity, std::size_t depth, std::size_t stem,
                                      const VertexMask& blocked, std::uint64_t seed) {
  if (arity < 2) throw OutOfRange("tree arity must be at least 2");
  if (!core.contains(root) || blocked.contains(root)) throw EmbedFailed("root outside the core");
  std::size_t tree_nodes = 1, level = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    level *= arity;
    tree_nodes += level;
    if (tree_nodes + stem > core.size()) throw EmbedFailed("tree larger than the core");
  }
  Rng rng(seed);
  VertexMask taken(g.vertex_count());
  auto allowed = [&](Vertex v) { return core.contains(v) && !blocked.contains(v); };
  auto stem_path = detail::random_walk_path(g, root, stem, allowed, taken, rng, 50 * (stem + 1) + 1000);
  if (!stem_path) throw EmbedFailed("no stem of length " + std::to_string(stem));

  TreeEmbedding emb;
  emb.stem.vertices = std::move(*stem_path);
  std::vector<Vertex> frontier{emb.stem.back()};
  for (std::size_t dep = 0; dep < depth; ++dep) {
    std::vector<Vertex> next;
    next.reserve(frontier.size() * arity);
    for (Vertex v : frontier) {
      std::vector<Vertex> opts;
      for (Vertex w : g.neighbors(v)) {
        if (detail::usable(core, blocked, taken, w)) opts.push_back(w);
      }
      if (opts.size() < arity) throw EmbedFailed("vertex without enough free neighbours");
      rng.shuffle(std::span<Vertex>(opts));
      for (std::size_t c = 0; c < arity; ++c) {
        taken.insert(opts[c]);
        emb.parent.emplace_back(opts[c], v);
        emb.tree_vertices.push_back(opts[c]);
        next.push_back(opts[c]);
      }
    }
    frontier = std::move(next);
  }
  emb.leaves = std::move(frontier);
  return emb;
}

namespace detail {

// Distances to `target` over vertices accepted by `open`, cut at max_depth.
// Unreached vertices get `inf`.
inline std::vector<std::uint32_t> bounded_bfs(const Graph& g, Vertex target,
                                              const std::function<bool(Vertex)>& open,
                                              std::size_t max_depth) {
  const std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(g.vertex_count(), inf);
  std::vector<Vertex> queue{target};
  dist[target] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    if (dist[v] >= max_depth) continue;
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == inf && open(w)) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

struct DfsOutcome {
  std::optional<std::vector<Vertex>> path;
  std::size_t steps = 0;
  bool exhausted = false;  // the whole search space was refuted
};

// Depth-exact DFS from s to t with len edges; randomized neighbour order,
// pruned by the distance to t.
inline DfsOutcome exact_dfs(const Graph& g, Vertex s, Vertex t, std::size_t len,
                            const std::vector<std::uint32_t>& dist,
                            const std::function<bool(Vertex)>& open, Rng& rng,
                            std::size_t step_limit) {
  DfsOutcome out;
  const std::size_t n = g.vertex_count();
  VertexMask on_path(n);
  std::vector<Vertex> path{s};
  on_path.insert(s);
  std::vector<std::vector<Vertex>> options;
  auto fill = [&](Vertex v) {
    const std::size_t remaining = len - (path.size() - 1);  // edges still to add after v
    std::vector<Vertex> opts;
    for (Vertex w : g.neighbors(v)) {
      if (remaining == 1) {
        if (w == t) opts.push_back(w);
        continue;
      }
      if (w == t || on_path.contains(w) || !open(w)) continue;
      if (dist[w] > remaining - 1) continue;
      opts.push_back(w);
    }
    rng.shuffle(std::span<Vertex>(opts));
    return opts;
  };
  options.push_back(fill(s));
  while (!options.empty()) {
    if (out.steps++ >= step_limit) return out;
    auto& opts = options.back();
    if (opts.empty()) {
      options.pop_back();
      on_path.erase(path.back());
      path.pop_back();
      continue;
    }
    const Vertex w = opts.back();
    opts.pop_back();
    path.push_back(w);
    if (w == t) {
      out.path = std::move(path);
      return out;
    }
    on_path.insert(w);
    options.push_back(fill(w));
  }
  out.exhausted = true;
  return out;
}

}  // namespace detail

struct PathSearchStats {
  std::size_t tree_attempts = 0;
  std::size_t tree_successes = 0;
  std::size_t dfs_restarts = 0;
  std::size_t steps = 0;
};

// A path of exactly len edges from s to t whose vertices avoid `forbidden`.
// With a core, the tree strategy runs first: stem plus leafy tree from a
// neighbour of s, closed by a leaf adjacent to t. Falls back to randomized
// depth-exact DFS with restarts.
inline VertexPath find_exact_path(const Graph& g, Vertex s, Vertex t, std::size_t len,
                                  const VertexMask& forbidden, const SearchBudget& budget,
                                  const ExpanderCore* core = nullptr,
                                  PathSearchStats* stats = nullptr) {
  const std::size_t n = g.vertex_count();
  if (s >= n || t >= n) throw OutOfRange("endpoint out of range");
  if (s == t) throw OutOfRange("endpoints must differ");
  if (len == 0) throw OutOfRange("path length must be positive");
  if (forbidden.contains(s) || forbidden.contains(t)) throw OutOfRange("endpoint is forbidden");
  if (len >= n) throw ImpossibleLength("path length " + std::to_string(len) + " >= n");
  if (len == 1) {
    if (g.has_edge(s, t)) return VertexPath{{s, t}};
    throw ImpossibleLength("endpoints are not adjacent");
  }
  auto open = [&](Vertex v) { return v != s && !forbidden.contains(v); };
  const auto dist = detail::bounded_bfs(g, t, open, len);
  std::uint32_t ds = std::numeric_limits<std::uint32_t>::max();
  for (Vertex w : g.neighbors(s)) {
    if (w == t) ds = 1;
    else if (open(w) && dist[w] != std::numeric_limits<std::uint32_t>::max())
      ds = std::min(ds, dist[w] + 1);
  }
  if (ds > len) throw ImpossibleLength("no walk of length <= " + std::to_string(len) + " joins the endpoints");

  PathSearchStats local;
  PathSearchStats& st = stats ? *stats : local;
  Rng rng(budget.seed);
  const std::size_t restarts = std::max<std::size_t>(1, budget.max_restarts);

  if (core != nullptr && len >= 3 && core->size() >= 8) {
    const std::size_t arity = core->tree_arity();
    std::size_t depth = 0, nodes = 1, level = 1;
    while (depth + 1 <= len - 2) {
      level *= arity;
      if (nodes + level > core->size() / 2) break;
      nodes += level;
      ++depth;
    }
    if (depth >= 1) {
      VertexMask blocked = forbidden;
      blocked.insert(s);
      blocked.insert(t);
      std::vector<Vertex> roots;
      for (Vertex w : g.neighbors(s)) {
        if (core->contains(w) && !blocked.contains(w)) roots.push_back(w);
      }
      const std::size_t tries = std::min<std::size_t>(3, restarts);
      for (std::size_t a = 0; a < tries && !roots.empty(); ++a) {
        ++st.tree_attempts;
        const Vertex root = roots[rng.below(roots.size())];
        try {
          const TreeEmbedding emb =
              embed_leafy_tree(*core, g, root, arity, depth, len - 2 - depth, blocked, rng.next());
          for (Vertex leaf : emb.leaves) {
            if (!g.has_edge(leaf, t)) continue;
            VertexPath p = emb.path_to(leaf);
            p.vertices.insert(p.vertices.begin(), s);
            p.vertices.push_back(t);
            ++st.tree_successes;
            return p;
          }
        } catch (const EmbedFailed&) {
        }
      }
    }
  }

  const std::size_t steps = budget.steps_for(n);
  for (std::size_t r = 0; r < restarts; ++r) {
    ++st.dfs_restarts;
    auto res = detail::exact_dfs(g, s, t, len, dist, open, rng, steps);
    st.steps += res.steps;
    if (res.path) return VertexPath{std::move(*res.path)};
    if (res.exhausted) throw ImpossibleLength("search space exhausted for length " + std::to_string(len));
  }
  throw NotFound("no path of length " + std::to_string(len) + " within budget");
}

// A cycle with exactly len vertices avoiding `forbidden`: for eligible edges
// (u,v) in random order, search a u-v path of len-1 edges. The step budget
// (restarts x steps) is shared across edges.
inline VertexCycle find_exact_cycle(const Graph& g, std::size_t len, const VertexMask& forbidden,
                                    const SearchBudget& budget) {
  const std::size_t n = g.vertex_count();
  if (len < 3) throw OutOfRange("cycle length must be at least 3");
  if (len > n) throw ImpossibleLength("cycle longer than the vertex count");
  std::vector<Edge> eligible;
  for (const Edge& e : g.edges()) {
    if (!forbidden.contains(e.u) && !forbidden.contains(e.v)) eligible.push_back(e);
  }
  Rng rng(budget.seed);
  rng.shuffle(std::span<Edge>(eligible));
  std::size_t left = std::max<std::size_t>(1, budget.max_restarts) * budget.steps_for(n);
  for (const Edge& e : eligible) {
    if (left == 0) break;
    auto open = [&](Vertex v) { return v != e.u && !forbidden.contains(v); };
    const auto dist = detail::bounded_bfs(g, e.v, open, len - 1);
    auto res = detail::exact_dfs(g, e.u, e.v, len - 1, dist, open, rng, left);
    left -= std::min(left, res.steps);
    if (res.path) return VertexCycle{std::move(*res.path)};
  }
  throw NotFound("no cycle of length " + std::to_string(len) + " within budget");
}

// Path sH -> ... -> tH whose internal vertices are exactly X, by Posa
// rotation-extension inside g[X] with the start fixed next to sH.
// `observer`, if set, sees every intermediate path.
inline VertexPath hamilton_path_between(
    const Graph& g, std::span<const Vertex> X, Vertex sH, Vertex tH, const SearchBudget& budget,
    const std::function<void(const std::vector<Vertex>&)>& observer = {}) {
  const std::size_t n = g.vertex_count();
  if (X.empty()) throw OutOfRange("X must be nonempty");
  if (sH == tH) throw OutOfRange("endpoints must differ");
  VertexMask in_x(n, X);
  if (in_x.contains(sH) || in_x.contains(tH)) throw OutOfRange("endpoints must lie outside X");
  if (in_x.size() != X.size()) throw OutOfRange("X has repeated vertices");

  std::vector<Vertex> starts;
  for (Vertex w : g.neighbors(sH)) {
    if (in_x.contains(w)) starts.push_back(w);
  }
  if (starts.empty()) throw NotFound("sH has no neighbour in X");
  const auto& tn = g.neighbors(tH);
  auto ends_ok = [&](Vertex v) { return std::binary_search(tn.begin(), tn.end(), v); };

  Rng rng(budget.seed);
  const std::size_t total = X.size();
  const std::size_t steps = budget.steps_for(n);
  std::vector<std::int64_t> pos(n, -1);
  std::vector<Vertex> path;
  path.reserve(total);

  auto free_neighbors = [&](Vertex v) {
    std::size_t c = 0;
    for (Vertex w : g.neighbors(v)) {
      if (in_x.contains(w) && pos[w] < 0) ++c;
    }
    return c;
  };

  for (std::size_t r = 0; r < std::max<std::size_t>(1, budget.max_restarts); ++r) {
    for (Vertex v : path) pos[v] = -1;
    path.clear();
    const Vertex s = starts[rng.below(starts.size())];
    path.push_back(s);
    pos[s] = 0;
    for (std::size_t step = 0; step < steps; ++step) {
      if (observer) observer(path);
      const Vertex v = path.back();
      if (path.size() == total && ends_ok(v)) {
        VertexPath out;
        out.vertices.reserve(total + 2);
        out.vertices.push_back(sH);
        out.vertices.insert(out.vertices.end(), path.begin(), path.end());
        out.vertices.push_back(tH);
        return out;
      }
      std::vector<Vertex> ext;
      for (Vertex w : g.neighbors(v)) {
        if (in_x.contains(w) && pos[w] < 0) ext.push_back(w);
      }
      if (!ext.empty()) {
        // Extend, preferring the neighbour with fewest free neighbours.
        std::size_t best = std::numeric_limits<std::size_t>::max();
        std::vector<Vertex> pick;
        for (Vertex w : ext) {
          const std::size_t f = free_neighbors(w);
          if (f < best) {
            best = f;
            pick.clear();
          }
          if (f == best) pick.push_back(w);
        }
        const Vertex w = pick[rng.below(pick.size())];
        pos[w] = static_cast<std::int64_t>(path.size());
        path.push_back(w);
        continue;
      }
      // Rotate: v-w with w = path[i]; reverse path[i+1..]. New end is path[i+1].
      std::vector<std::size_t> any, good;
      const bool full = path.size() == total;
      for (Vertex w : g.neighbors(v)) {
        if (!in_x.contains(w) || pos[w] < 0) continue;
        const auto i = static_cast<std::size_t>(pos[w]);
        if (i + 2 == path.size()) continue;  // w is v's predecessor
        const Vertex fresh = path[i + 1];
        any.push_back(i);
        if (full ? ends_ok(fresh) : free_neighbors(fresh) > 0) good.push_back(i);
      }
      if (any.empty()) break;
      const auto& choice = good.empty() ? any : good;
      const std::size_t i = choice[rng.below(choice.size())];
      std::reverse(path.begin() + static_cast<std::ptrdiff_t>(i + 1), path.end());
      for (std::size_t k = i + 1; k < path.size(); ++k) pos[path[k]] = static_cast<std::int64_t>(k);
    }
  }
  throw NotFound("no Hamilton path through X within budget");
}

}  // namespace pancyc
