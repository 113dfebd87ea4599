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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pancyc/certificate.hpp"
#include "pancyc/errors.hpp"
#include "pancyc/graph.hpp"
#include "pancyc/params.hpp"
#include "pancyc/pathfinder.hpp"
#include "pancyc/sampler.hpp"

namespace pancyc {

struct StepRecord {
  int step = 0;
  bool ok = false;
  std::string detail;
  std::size_t edges_added = 0;
};

struct ConstructionState {
  Graph H;
  VertexMask used;
  std::map<Edge, int> provenance;  // layer each edge of H came from
  std::vector<StepRecord> log;

  // Step 1. cycles[i] is C_i for i <= K0, oriented s_i .. t_i so that the
  // closing pair is e_i.
  std::vector<std::vector<Vertex>> cycles;
  std::vector<Vertex> short_cycle;  // v_1 .. v_{tb+1}

  // e_0 .. e_K and their arcs, arc i oriented from one chord endpoint to the other.
  std::vector<Edge> shortcuts;
  std::vector<std::vector<Vertex>> arcs;

  // Step 2.
  std::vector<std::vector<Vertex>> links;  // Q_0 .. Q_{K0}
  std::vector<Vertex> star_cycle;          // C*, starting at s_0
  std::uint64_t ell_star = 0;

  // Step 3.
  Edge e_star;
  std::vector<GadgetPath> gadget_paths;
  std::vector<Vertex> p_star;  // from v_{tb+1} to the linked endpoint of e*
  Vertex s_H = 0, t_H = 0;

  // Step 4.
  std::vector<Vertex> hamilton_path;  // s_H .. t_H
  std::vector<Vertex> c_h;

  // Step 5.
  std::vector<LongShortcut> longs;
  std::vector<SingleShortcut> singles;
  std::size_t long_candidates = 0;  // G5 pairs that qualified for some f_i

  explicit ConstructionState(std::size_t n = 0) : H(n), used(n) {}

  // Adds an edge of layer `layer`. The edge must exist in that layer.
  bool add(const Graph& layer_graph, int layer, Edge e) {
    if (!layer_graph.has_edge(e)) {
      throw StepFailed(layer, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                  " is not in G" + std::to_string(layer));
    }
    if (!H.add_edge(e)) return false;
    provenance.emplace(e, layer);
    return true;
  }
  std::size_t add_path(const Graph& layer_graph, int layer, const std::vector<Vertex>& p) {
    std::size_t added = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) added += add(layer_graph, layer, Edge(p[i], p[i + 1]));
    used.insert_all(p);
    return added;
  }
};

namespace detail {

inline VertexMask forbid_except(const VertexMask& used, Vertex a, Vertex b) {
  VertexMask f = used;
  f.erase(a);
  f.erase(b);
  return f;
}

inline std::optional<ExpanderCore> free_core(const Graph& g, const VertexMask& used) {
  std::vector<Vertex> free;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!used.contains(v)) free.push_back(v);
  }
  try {
    return extract_core(g, free);
  } catch (const CoreTooSmall&) {
    return std::nullopt;
  }
}

}  // namespace detail

// Step 1: vertex-disjoint cycles C_0..C_{K0} of l_i + 1 vertices and C_short
// of tb + 1 vertices in G1. e_i is the cycle edge with the smallest endpoints.
inline void step1_cycles(const Graph& g1, ConstructionState& st, const ParamSet& ps,
                         const SearchBudget& budget) {
  const std::size_t before = st.H.edge_count();
  st.cycles.assign(ps.K0 + 1, {});
  st.shortcuts.assign(ps.K + 1, Edge{});
  st.arcs.assign(ps.K + 1, {});
  auto find = [&](std::size_t len, std::uint64_t salt, const std::string& what) {
    try {
      return find_exact_cycle(g1, len, st.used, budget.salted(salt)).vertices;
    } catch (const Error& e) {
      throw StepFailed(1, what + ": " + e.what());
    }
  };
  for (std::uint64_t i = 0; i <= ps.K0; ++i) {
    std::vector<Vertex> c = find(ParamSet::ell(i) + 1, 100 + i, "C_" + std::to_string(i));
    st.add_path(g1, 1, c);
    st.add(g1, 1, Edge(c.back(), c.front()));
    // Rotate so the smallest-endpoint edge closes the sequence.
    const std::size_t k = c.size();
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (Edge(c[j], c[(j + 1) % k]) < Edge(c[best], c[(best + 1) % k])) best = j;
    }
    std::vector<Vertex> rot;
    for (std::size_t j = 0; j < k; ++j) rot.push_back(c[(best + 1 + j) % k]);
    // rot runs from one endpoint of e_i to the other; orient s_i = min first.
    if (rot.front() > rot.back()) std::reverse(rot.begin(), rot.end());
    st.shortcuts[i] = Edge(rot.front(), rot.back());
    st.arcs[i] = rot;
    st.cycles[i] = rot;
  }
  std::vector<Vertex> s = find(ps.gadget_length(), 199, "C_short");
  st.add_path(g1, 1, s);
  st.add(g1, 1, Edge(s.back(), s.front()));
  st.short_cycle = s;
  st.log.push_back({1, true, "", st.H.edge_count() - before});
}

// Step 2: Q_i of length d+2 in G2 from t_i to s_{i+1}, closing C*.
inline void step2_link(const Graph& g2, ConstructionState& st, const ParamSet& ps,
                       const SearchBudget& budget) {
  const std::size_t before = st.H.edge_count();
  const auto core = detail::free_core(g2, st.used);
  st.links.assign(ps.K0 + 1, {});
  for (std::uint64_t i = 0; i <= ps.K0; ++i) {
    const Vertex from = st.shortcuts[i].v;  // t_i
    const Vertex to = st.shortcuts[(i + 1) % (ps.K0 + 1)].u;  // s_{i+1}
    try {
      VertexPath q = find_exact_path(g2, from, to, ps.d + 2, detail::forbid_except(st.used, from, to),
                                     budget.salted(200 + i), core ? &*core : nullptr);
      st.add_path(g2, 2, q.vertices);
      st.links[i] = q.vertices;
    } catch (const Error& e) {
      throw StepFailed(2, "Q_" + std::to_string(i) + ": " + e.what());
    }
  }
  st.star_cycle.clear();
  for (std::uint64_t i = 0; i <= ps.K0; ++i) {
    st.star_cycle.push_back(st.shortcuts[i].u);
    st.star_cycle.insert(st.star_cycle.end(), st.links[i].begin(), st.links[i].end() - 1);
  }
  st.ell_star = st.star_cycle.size();
  if (st.ell_star != ps.star_length() || !check_cycle(st.H, VertexCycle{st.star_cycle})) {
    throw StepFailed(2, "C* has length " + std::to_string(st.ell_star));
  }
  st.log.push_back({2, true, "", st.H.edge_count() - before});
}

// Pairwise vertex-disjoint C* edges taken from the Q runs: every second edge
// of each run. Returned as positions k meaning the edge star[k]-star[k+1].
inline std::vector<std::size_t> disjoint_link_edges(const ParamSet& ps) {
  std::vector<std::size_t> out;
  std::size_t base = 0;
  for (std::uint64_t i = 0; i <= ps.K0; ++i) {
    base += 1;  // the e_i edge
    for (std::size_t off = 0; off < ps.d + 2; off += 2) out.push_back(base + off);
    base += ps.d + 2;
  }
  return out;
}

// Step 3: the rest of the binary family, the gadget paths and P*, in G3.
inline void step3_shortcuts(const Graph& g3, ConstructionState& st, const ParamSet& ps,
                            const SearchBudget& budget) {
  const std::size_t before = st.H.edge_count();
  const auto& star = st.star_cycle;
  const std::size_t ls = star.size();
  auto star_edge = [&](std::size_t k) { return Edge(star[k % ls], star[(k + 1) % ls]); };

  const std::vector<std::size_t> cand = disjoint_link_edges(ps);
  const std::size_t spares = ps.K - ps.K0;
  if (cand.size() < spares + 1) {
    throw InsufficientSpareEdges("C* offers " + std::to_string(cand.size()) +
                                 " disjoint edges, need " + std::to_string(spares + 1));
  }
  std::vector<bool> taken(cand.size(), false);
  std::vector<std::size_t> spare_pos;
  for (std::size_t k = 0; k < spares; ++k) {
    const std::size_t idx = k * cand.size() / spares;
    taken[idx] = true;
    spare_pos.push_back(cand[idx]);
  }
  // e*: the remaining candidate farthest (cyclically) from every spare.
  std::optional<std::size_t> star_pos;
  std::size_t best = 0;
  for (std::size_t c = 0; c < cand.size(); ++c) {
    if (taken[c]) continue;
    std::size_t near = ls;
    for (std::size_t p : spare_pos) {
      const std::size_t dd = (cand[c] + ls - p) % ls;
      near = std::min({near, dd, ls - dd});
    }
    if (!star_pos || near > best) {
      best = near;
      star_pos = cand[c];
    }
  }
  st.e_star = star_edge(*star_pos);
  for (std::size_t k = 0; k < spares; ++k) st.shortcuts[ps.K0 + 1 + k] = star_edge(spare_pos[k]);

  const auto core = detail::free_core(g3, st.used);
  const ExpanderCore* cp = core ? &*core : nullptr;
  auto path = [&](Vertex a, Vertex b, std::size_t len, std::uint64_t salt, const std::string& what) {
    try {
      VertexPath p = find_exact_path(g3, a, b, len, detail::forbid_except(st.used, a, b),
                                     budget.salted(salt), cp);
      st.add_path(g3, 3, p.vertices);
      return p.vertices;
    } catch (const InsufficientSpareEdges&) {
      throw;
    } catch (const Error& e) {
      throw StepFailed(3, what + ": " + e.what());
    }
  };

  // Longest first, while the most room is left.
  for (std::uint64_t i = ps.K; i > ps.K0; --i) {
    const Edge e = st.shortcuts[i];
    st.arcs[i] = path(e.u, e.v, ParamSet::ell(i), 300 + i, "Q_" + std::to_string(i));
  }
  const auto& cs = st.short_cycle;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order;
  for (std::uint64_t i = 0; i < ps.t; ++i) {
    for (std::uint64_t j = 0; j < ps.b; ++j) order.emplace_back(i, j);
  }
  std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    return ps.gadget_path_length(x.first, x.second) > ps.gadget_path_length(y.first, y.second);
  });
  st.gadget_paths.clear();
  for (auto [i, j] : order) {
    const std::size_t sg = ps.sigma(i, j);  // 1-based position on C_short
    const Vertex a = cs[sg - 1], b = cs[sg];
    GadgetPath gp;
    gp.digit = i;
    gp.value = j;
    gp.edge = Edge(a, b);
    gp.path = path(a, b, ps.gadget_path_length(i, j), 400 + ps.sigma(i, j),
                   "P_" + std::to_string(i) + "," + std::to_string(j));
    st.gadget_paths.push_back(std::move(gp));
  }
  std::sort(st.gadget_paths.begin(), st.gadget_paths.end(), [](const auto& x, const auto& y) {
    return std::pair(x.digit, x.value) < std::pair(y.digit, y.value);
  });

  const Vertex v_last = cs.back();
  std::optional<Error> last;
  for (int side = 0; side < 2 && st.p_star.empty(); ++side) {
    const Vertex a = side == 0 ? st.e_star.u : st.e_star.v;
    try {
      VertexPath p = find_exact_path(g3, v_last, a, ps.d + 2, detail::forbid_except(st.used, v_last, a),
                                     budget.salted(500 + side), cp);
      st.add_path(g3, 3, p.vertices);
      st.p_star = p.vertices;
      st.s_H = st.e_star.other(a);
    } catch (const Error& e) {
      last = e;
    }
  }
  if (st.p_star.empty()) throw StepFailed(3, std::string("P*: ") + (last ? last->what() : ""));
  st.t_H = cs.front();
  st.log.push_back({3, true, "", st.H.edge_count() - before});
}

// Region cycle C* with every e_i swapped for its arc, as a path from c to a
// where e* = {a, c}.
inline std::vector<Vertex> region_path(const ConstructionState& st, Vertex c, Vertex a) {
  const auto& star = st.star_cycle;
  const std::size_t ls = star.size();
  const std::size_t pc = static_cast<std::size_t>(std::find(star.begin(), star.end(), c) - star.begin());
  const int dir = star[(pc + 1) % ls] == a ? -1 : 1;
  std::map<Edge, std::size_t> arc_of;
  for (std::size_t i = 0; i < st.shortcuts.size(); ++i) arc_of[st.shortcuts[i]] = i;
  std::vector<Vertex> out{c};
  std::size_t p = pc;
  for (std::size_t k = 0; k + 1 < ls; ++k) {
    const std::size_t q = (p + ls + static_cast<std::size_t>(dir)) % ls;
    const Vertex x = star[p], y = star[q];
    auto it = arc_of.find(Edge(x, y));
    if (it != arc_of.end()) {
      const auto& arc = st.arcs[it->second];
      if (arc.front() == x) out.insert(out.end(), arc.begin() + 1, arc.end());
      else out.insert(out.end(), arc.rbegin() + 1, arc.rend());
    } else {
      out.push_back(y);
    }
    p = q;
  }
  return out;
}

// Step 4: Hamilton path in G4 through the untouched vertices, closing C_H.
inline void step4_hamilton(const Graph& g4, ConstructionState& st, const ParamSet& ps,
                           const SearchBudget& budget) {
  const std::size_t n = st.H.vertex_count();
  const std::size_t before = st.H.edge_count();
  std::vector<Vertex> X;
  for (Vertex v = 0; v < n; ++v) {
    if (!st.used.contains(v)) X.push_back(v);
  }
  if (X.empty()) throw StepFailed(4, "no vertices left for the Hamilton path");
  try {
    st.hamilton_path = hamilton_path_between(g4, X, st.s_H, st.t_H, budget.salted(600)).vertices;
  } catch (const Error& e) {
    throw StepFailed(4, e.what());
  }
  st.add_path(g4, 4, st.hamilton_path);

  const Vertex c = st.s_H;
  const Vertex a = st.e_star.other(c);
  std::vector<Vertex> ch = region_path(st, c, a);
  ch.insert(ch.end(), st.p_star.rbegin() + 1, st.p_star.rend());  // a .. v_{tb+1}
  const auto& cs = st.short_cycle;
  // Expanded gadget, from v_{tb+1} back to v_1.
  for (std::size_t sg = ps.gadget_length() - 1; sg >= 1; --sg) {
    const GadgetPath* gp = nullptr;
    for (const auto& p : st.gadget_paths) {
      if (ps.sigma(p.digit, p.value) == sg) gp = &p;
    }
    if (gp->path.front() == cs[sg]) ch.insert(ch.end(), gp->path.begin() + 1, gp->path.end());
    else ch.insert(ch.end(), gp->path.rbegin() + 1, gp->path.rend());
  }
  // v_1 = t_H, then P backwards to just before s_H.
  ch.insert(ch.end(), st.hamilton_path.rbegin() + 1, st.hamilton_path.rend() - 1);
  st.c_h = std::move(ch);
  if (st.c_h.size() != n || !check_cycle(st.H, VertexCycle{st.c_h})) {
    throw StepFailed(4, "assembled C_H is not a Hamilton cycle (" + std::to_string(st.c_h.size()) + " vertices)");
  }
  const std::size_t expect = n + ps.K + ps.b * ps.t + 3;
  if (st.H.edge_count() != expect) {
    throw StepFailed(4, "H4 has " + std::to_string(st.H.edge_count()) + " edges, expected " + std::to_string(expect));
  }
  st.log.push_back({4, true, "", st.H.edge_count() - before});
}

// Step 5: long shortcuts f_i and single shortcuts g_l from G5.
inline void step5_extras(const Graph& g5, ConstructionState& st, const ParamSet& ps) {
  const std::size_t n = st.c_h.size();
  const std::size_t before = st.H.edge_count();
  const long long L = static_cast<long long>(ps.L);
  const long long nn = static_cast<long long>(n);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[st.c_h[i]] = i;
  const std::size_t region = st.ell_star + ps.L;  // C_H positions 0 .. region-1

  // Qualifying G5 pairs: one arc runs through the whole region. Keyed by
  // that arc's length in edges.
  std::map<std::size_t, Edge> through;
  for (const Edge& e : g5.edges()) {
    for (int side = 0; side < 2; ++side) {
      const std::size_t x = pos[side ? e.v : e.u], y = pos[side ? e.u : e.v];
      const std::size_t len = (y + n - x) % n;
      if (len < 2 || len > n - 2) continue;
      const bool covers = (x == 0 && y >= region - 1) || (x >= region && y < x && y >= region - 1);
      if (covers) through.emplace(len, e);
    }
  }
  st.long_candidates = through.size();

  st.longs.clear();
  long long frontier = static_cast<long long>(region);  // lengths below frontier+1 covered
  const double slack = std::pow(static_cast<double>(n), 0.9);
  for (std::uint64_t i = 3; i <= ps.m; ++i) {
    if (frontier >= nn - L - 1) break;
    const long long nominal = static_cast<long long>(i) << ps.K;
    std::optional<std::pair<std::size_t, Edge>> pick;
    for (const auto& [len, e] : through) {
      const long long ell = static_cast<long long>(len) - 1;
      if (ell > frontier + L - 1) break;
      if (ell + 2 <= frontier) continue;
      if (std::abs(static_cast<double>(ell - nominal)) > slack) continue;
      pick = std::pair(len, e);
    }
    if (!pick) continue;
    st.add(g5, 5, pick->second);
    st.longs.push_back({i, pick->second, pick->first - 1});
    frontier = static_cast<long long>(pick->first) + 1;
  }
  if (frontier < nn - L - 1) {
    throw StepFailed(5, "long shortcuts reach " + std::to_string(frontier) + ", need " + std::to_string(nn - L - 1));
  }

  // Singles: reuse any chord already closing an l-cycle, else draw from G5.
  st.singles.clear();
  const std::uint64_t top = std::min<std::uint64_t>(ps.singles_top(), st.ell_star - 1);
  std::map<std::size_t, Edge> have;  // cycle length -> chord
  for (const Edge& e : st.H.edges()) {
    const std::size_t f = (pos[e.v] + n - pos[e.u]) % n;
    if (f == 1 || f == n - 1) continue;
    have.emplace(f + 1, e);
    have.emplace(n - f + 1, e);
  }
  for (std::uint64_t ell = 3; ell <= top; ++ell) {
    auto it = have.find(ell);
    if (it != have.end()) {
      st.singles.push_back({ell, it->second});
      continue;
    }
    std::optional<Edge> found;
    for (std::size_t j = 0; j < n && !found; ++j) {
      const Edge e(st.c_h[j], st.c_h[(j + ell - 1) % n]);
      if (g5.has_edge(e) && !st.H.has_edge(e)) found = e;
    }
    if (!found) throw StepFailed(5, "no chord for single length " + std::to_string(ell));
    st.add(g5, 5, *found);
    st.singles.push_back({ell, *found});
  }
  st.log.push_back({5, true, "", st.H.edge_count() - before});
}

inline Certificate make_certificate(const ConstructionState& st, const ParamSet& ps) {
  Certificate c;
  c.n = st.c_h.size();
  c.params = ps;
  c.ell_star = st.ell_star;
  c.hamilton = st.c_h;
  c.star_cycle = st.star_cycle;
  for (std::uint64_t i = 0; i <= ps.K; ++i) c.binary.push_back({i, st.shortcuts[i], st.arcs[i]});
  c.gadget.closing = Edge(st.short_cycle.front(), st.short_cycle.back());
  c.gadget.cycle = st.short_cycle;
  c.gadget.paths = st.gadget_paths;
  c.star.chord = st.e_star;
  c.star.path = st.p_star;
  c.long_shortcuts = st.longs;
  c.singles = st.singles;
  return c;
}

// Problems found by the post-construction audit; empty when clean.
inline std::vector<std::string> audit_construction(const ConstructionState& st, const LayerSample& sample) {
  std::vector<std::string> bad;
  for (const auto& [e, layer] : st.provenance) {
    if (!sample.layer(static_cast<std::size_t>(layer)).has_edge(e)) {
      bad.push_back("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not in G" + std::to_string(layer));
    }
  }
  if (st.provenance.size() != st.H.edge_count()) bad.push_back("edges without provenance");
  if (!is_subgraph(st.H, sample.union_graph)) bad.push_back("H is not a subgraph of the union");
  // C_H visits every vertex once, so every path laid out on it is internally
  // disjoint from every other one.
  if (!all_distinct(st.c_h, st.H.vertex_count()) || st.c_h.size() != st.H.vertex_count()) {
    bad.push_back("C_H repeats or misses vertices");
  }
  return bad;
}

struct PipelineOptions {
  std::size_t attempts = 5;  // full restarts with fresh search seeds
};

struct PipelineResult {
  bool success = false;
  int failed_step = 0;
  std::string detail;
  Graph H;
  std::optional<Certificate> certificate;
  std::vector<StepRecord> log;  // of the last attempt
  std::size_t attempts = 0;
  std::size_t long_candidates = 0;

  bool step_ok(int k) const {
    for (const auto& r : log) {
      if (r.step == k) return r.ok;
    }
    return false;
  }
};

inline PipelineResult run_pipeline(const LayerSample& sample, const ParamSet& ps, const SearchBudget& budget,
                                   const PipelineOptions& opt = {}) {
  const std::size_t n = sample.union_graph.vertex_count();
  PipelineResult res;
  if (ps.n != n) throw OutOfRange("parameter set is for a different n");
  for (std::size_t a = 0; a < std::max<std::size_t>(1, opt.attempts); ++a) {
    ++res.attempts;
    const SearchBudget b = budget.salted(0xa77e0000 + a);
    ConstructionState st(n);
    int step = 1;
    try {
      step1_cycles(sample.layer(1), st, ps, b);
      step = 2;
      step2_link(sample.layer(2), st, ps, b);
      step = 3;
      step3_shortcuts(sample.layer(3), st, ps, b);
      step = 4;
      step4_hamilton(sample.layer(4), st, ps, b);
      step = 5;
      step5_extras(sample.layer(5), st, ps);
      const auto bad = audit_construction(st, sample);
      if (!bad.empty()) throw StepFailed(5, "audit: " + bad.front());
      res.success = true;
      res.failed_step = 0;
      res.detail.clear();
      res.H = st.H;
      res.certificate = make_certificate(st, ps);
      res.log = st.log;
      res.long_candidates = st.long_candidates;
      return res;
    } catch (const StepFailed& e) {
      st.log.push_back({e.step(), false, e.detail(), 0});
      res.failed_step = e.step();
      res.detail = e.what();
    } catch (const Error& e) {
      st.log.push_back({step, false, e.what(), 0});
      res.failed_step = step;
      res.detail = e.what();
    }
    res.H = st.H;
    res.log = st.log;
  }
  return res;
}

}  // namespace pancyc
