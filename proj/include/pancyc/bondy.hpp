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

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "pancyc/certificate.hpp"
#include "pancyc/errors.hpp"
#include "pancyc/graph.hpp"

namespace pancyc {

// Deterministic sparse pancyclic subgraph of K_n: the cycle 0..n-1 with
// consecutive shortcuts e_i = (p_i, p_i + 2^i + 1), p_0 = 0, a closing chord
// (0, S) with S = p_{K+1} = 2^{K+1} + K, and one chord per length left over.
struct BondyGraph {
  std::size_t n = 0;
  std::uint64_t K = 0;
  std::vector<Vertex> cycle;
  std::vector<Edge> shortcuts;  // e_0 .. e_K
  Edge closing;
  std::vector<SingleShortcut> extra;
  Graph graph;

  std::uint64_t span() const { return (std::uint64_t{1} << (K + 1)) + K; }  // S
  // Closed by the closing chord: [K+2, S+1].
  std::uint64_t closing_lo() const { return K + 2; }
  std::uint64_t closing_hi() const { return span() + 1; }
  // Full cycle shortened by subsets: [n - 2^{K+1} + 1, n].
  std::uint64_t top_lo() const { return n + 1 - (std::uint64_t{1} << (K + 1)); }
  std::uint64_t edge_limit() const { return n + K + 2 + extra.size(); }
};

// Largest K with n/2 <= 2^{K+1} + K - 1 <= n and 2^{K+1} + K <= n - 2. Where the
// sandwich has no such K (n = 9) the largest K with room for the closing chord
// is used and the extra chords fill the gap.
inline std::uint64_t bondy_K(std::size_t n) {
  if (n < 8) throw OutOfRange("bondy construction needs n >= 8");
  std::optional<std::uint64_t> best, fits;
  for (std::uint64_t K = 1; K < 40; ++K) {
    const std::uint64_t v = (std::uint64_t{1} << (K + 1)) + K - 1;
    if (v + 3 > n) break;
    fits = K;
    if (2 * v >= n) best = K;
  }
  if (!fits) throw Infeasible("no K fits n=" + std::to_string(n));
  return best ? *best : *fits;
}

class BondyDecoder {
 public:
  explicit BondyDecoder(const BondyGraph& bg) : bg_(&bg), layout_(bg.cycle) {
    for (std::uint64_t i = 0; i <= bg.K; ++i) {
      arcs_.push_back(layout_.chord_arc(bg.shortcuts[i], ParamSet::ell(i), "e_" + std::to_string(i)));
    }
    closing_ = layout_.chord_arc(bg.closing, bg.span(), "closing chord", arcs_);
    for (const auto& g : bg.extra) singles_.emplace_back(g.length, layout_.chord_arc(g.chord, g.length - 1, "extra"));
  }

  // Tags: 'w' closing window, 't' top window, 'x' extra chord.
  std::pair<char, VertexCycle> decode(std::size_t ell) const {
    const BondyGraph& bg = *bg_;
    if (ell < 3 || ell > bg.n) throw OutOfRange("length outside [3, n]");
    auto drops = [&](std::uint64_t k) {
      std::vector<ArcInterval> out;
      for (std::size_t i = 0; i < arcs_.size(); ++i) {
        if ((k >> i) & 1) out.push_back(arcs_[i]);
      }
      return out;
    };
    if (ell >= bg.closing_lo() && ell <= bg.closing_hi()) {
      return {'w', layout_.compose(closing_, drops(bg.closing_hi() - ell), "closing window")};
    }
    if (ell >= bg.top_lo()) return {'t', layout_.compose(std::nullopt, drops(bg.n - ell), "top window")};
    for (const auto& [len, iv] : singles_) {
      if (len == ell) return {'x', layout_.compose(iv, {}, "extra")};
    }
    throw NoCaseApplies(ell);
  }

 private:
  const BondyGraph* bg_;
  CycleLayout layout_;
  std::vector<ArcInterval> arcs_;
  ArcInterval closing_;
  std::vector<std::pair<std::uint64_t, ArcInterval>> singles_;
};

inline BondyGraph bondy_construct(std::size_t n) {
  BondyGraph bg;
  bg.n = n;
  bg.K = bondy_K(n);
  bg.graph = cycle_graph(n);
  for (Vertex v = 0; v < n; ++v) bg.cycle.push_back(v);
  std::uint64_t p = 0;
  for (std::uint64_t i = 0; i <= bg.K; ++i) {
    const std::uint64_t q = p + ParamSet::ell(i);
    bg.shortcuts.emplace_back(static_cast<Vertex>(p), static_cast<Vertex>(q));
    bg.graph.add_edge(bg.shortcuts.back());
    p = q;
  }
  bg.closing = Edge(0, static_cast<Vertex>(p));
  bg.graph.add_edge(bg.closing);
  for (std::uint64_t ell = 3; ell <= n; ++ell) {
    const bool covered = (ell >= bg.closing_lo() && ell <= bg.closing_hi()) || ell >= bg.top_lo();
    if (covered) continue;
    // First position whose (ell-1)-arc chord is not yet an edge.
    for (std::size_t j = 0; j < n; ++j) {
      const Edge e(static_cast<Vertex>(j), static_cast<Vertex>((j + ell - 1) % n));
      if (!bg.graph.has_edge(e)) {
        bg.graph.add_edge(e);
        bg.extra.push_back({ell, e});
        break;
      }
    }
  }
  return bg;
}

inline VerificationReport bondy_verify(const Graph& g, const BondyGraph& bg) {
  VerificationReport r;
  r.n = bg.n;
  r.edge_count = g.edge_count();
  r.budget = bg.K + 2 + bg.extra.size();
  r.budget_ok = g.edge_count() <= bg.edge_limit();
  r.hamilton_ok = bg.cycle.size() == bg.n && check_cycle(g, VertexCycle{bg.cycle});
  r.registry_ok = true;
  std::optional<BondyDecoder> dec;
  std::string malformed;
  try {
    dec.emplace(bg);
  } catch (const Error& e) {
    malformed = e.what();
    r.notes.push_back(malformed);
  }
  verify_lengths(g, bg.n, [&](std::size_t ell) {
    if (!dec) throw MalformedCertificate(malformed);
    auto [tag, cyc] = dec->decode(ell);
    return std::tuple<char, std::uint64_t, VertexCycle>{tag, 0, std::move(cyc)};
  }, r);
  return r;
}

inline nlohmann::json to_json(const BondyGraph& bg, const std::string& timestamp = "") {
  nlohmann::json j;
  j["format"] = "pancyc-bondy";
  j["version"] = 1;
  j["timestamp"] = timestamp;
  j["n"] = bg.n;
  j["K"] = bg.K;
  j["hamilton_cycle"] = bg.cycle;
  auto& sc = j["shortcuts"] = nlohmann::json::array();
  for (std::size_t i = 0; i < bg.shortcuts.size(); ++i) sc.push_back({{"index", i}, {"chord", edge_json(bg.shortcuts[i])}});
  j["closing"] = edge_json(bg.closing);
  auto& ex = j["extra"] = nlohmann::json::array();
  for (const auto& g : bg.extra) ex.push_back({{"length", g.length}, {"chord", edge_json(g.chord)}});
  return j;
}

inline BondyGraph bondy_from_json(const nlohmann::json& j, const Graph& g) {
  try {
    if (j.at("format").get<std::string>() != "pancyc-bondy") throw ParseError("not a bondy table");
    BondyGraph bg;
    bg.n = j.at("n").get<std::size_t>();
    bg.K = j.at("K").get<std::uint64_t>();
    bg.cycle = j.at("hamilton_cycle").get<std::vector<Vertex>>();
    for (const auto& s : j.at("shortcuts")) bg.shortcuts.push_back(edge_from_json(s.at("chord")));
    bg.closing = edge_from_json(j.at("closing"));
    for (const auto& s : j.at("extra")) bg.extra.push_back({s.at("length").get<std::uint64_t>(), edge_from_json(s.at("chord"))});
    bg.graph = g;
    return bg;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bondy table: ") + e.what());
  }
}

}  // namespace pancyc
