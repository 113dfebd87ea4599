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
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pancyc/errors.hpp"
#include "pancyc/graph.hpp"
#include "pancyc/rng.hpp"

namespace pancyc {

inline constexpr std::size_t kLayerCount = 5;

struct LayerProbs {
  std::array<double, kLayerCount> p{};  // p1..p5
  double p_star = 0.0;

  static double combine(const std::array<double, kLayerCount>& p) {
    double keep = 1.0;
    for (double x : p) keep *= 1.0 - x;
    return 1.0 - keep;
  }
};

// Layer probabilities of the five-round exposure, natural logarithms,
// each clamped to [0,1].
inline LayerProbs layer_probs(std::size_t n) {
  if (n < 16) throw OutOfRange("layer_probs requires n >= 16");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double lnln = std::log(ln);
  auto clamp = [](double x) { return std::clamp(x, 0.0, 1.0); };
  LayerProbs out;
  out.p[0] = out.p[4] = clamp(2.0 * lnln / nn);
  out.p[1] = out.p[2] = clamp(50.0 * ln / (nn * lnln));
  out.p[3] = clamp((ln + 10.0 * std::sqrt(ln)) / nn);
  out.p_star = LayerProbs::combine(out.p);
  return out;
}

// Per-pair Bernoulli trials are driven by a counter-based hash of
// (seed, pair index) above this density and by geometric skipping below it.
inline constexpr double kGeometricSkipBelow = 0.01;

// Lexicographic pair index of (u,v), u < v.
constexpr std::uint64_t pair_index(std::uint64_t n, std::uint64_t u, std::uint64_t v) noexcept {
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("probability outside [0,1]");
  Graph g(n);
  if (n < 2 || p == 0.0) return g;
  if (p >= kGeometricSkipBelow) {
    std::uint64_t k = 0;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v, ++k) {
        if (p == 1.0 || to_unit(splitmix64(seed ^ splitmix64(k))) < p) g.append_sorted_edge(u, v);
      }
    }
    return g;
  }
  // Geometric skipping: the gap to the next present pair is Geom(p). The
  // draw stream is keyed by (seed, draw number).
  const double log_q = std::log1p(-p);
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t idx = 0;  // next candidate pair index
  std::uint64_t draw = 0;
  Vertex u = 0;
  std::uint64_t row_start = 0;      // pair_index(n, u, u+1)
  std::uint64_t row_end = n - 1;    // first index of row u+1
  while (true) {
    const double r = 1.0 - to_unit(splitmix64(seed ^ splitmix64(draw++ ^ 0xA5A5A5A5ULL)));
    const double gap = std::floor(std::log(r) / log_q);
    if (gap >= static_cast<double>(total - idx)) break;
    idx += static_cast<std::uint64_t>(gap);
    while (idx >= row_end) {
      ++u;
      row_start = row_end;
      row_end += n - 1 - u;
    }
    g.append_sorted_edge(u, static_cast<Vertex>(u + 1 + (idx - row_start)));
    if (++idx >= total) break;
  }
  return g;
}

// Independent per-layer seeds: layer i (1-based) uses mix_seed(seed, i).
inline std::uint64_t layer_seed(std::uint64_t seed, std::size_t layer) {
  return mix_seed(seed, static_cast<std::uint64_t>(layer));
}

struct LayerSample {
  std::array<Graph, kLayerCount> layers;
  Graph union_graph;
  std::uint64_t seed = 0;
  LayerProbs probs;

  const Graph& layer(std::size_t i) const { return layers.at(i - 1); }
};

inline LayerSample sample_layers(std::size_t n, const LayerProbs& probs, std::uint64_t seed) {
  LayerSample s;
  s.seed = seed;
  s.probs = probs;
  for (std::size_t i = 0; i < kLayerCount; ++i) {
    s.layers[i] = sample_gnp(n, probs.p[i], layer_seed(seed, i + 1));
  }
  s.union_graph = graph_union(s.layers);
  return s;
}

inline nlohmann::json probs_to_json(const LayerProbs& p) {
  return {{"p", p.p}, {"p_star", p.p_star}};
}

// One JSON header line, then five edge-list blocks.
inline void write_layer_sample(std::ostream& os, const LayerSample& s) {
  nlohmann::json header = {{"format", "pancyc-layers"},
                           {"version", 1},
                           {"n", s.union_graph.vertex_count()},
                           {"seed", s.seed},
                           {"probs", probs_to_json(s.probs)}};
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 1; i <= kLayerCount; ++i) seeds.push_back(layer_seed(s.seed, i));
  header["layer_seeds"] = seeds;
  os << header.dump() << '\n';
  for (const Graph& g : s.layers) write_edge_list(os, g);
}

inline LayerSample read_layer_sample(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("layer sample: missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("layer sample header: ") + e.what());
  }
  LayerSample s;
  s.seed = header.at("seed").get<std::uint64_t>();
  s.probs.p = header.at("probs").at("p").get<std::array<double, kLayerCount>>();
  s.probs.p_star = header.at("probs").at("p_star").get<double>();
  for (auto& g : s.layers) g = read_edge_list(is);
  s.union_graph = graph_union(s.layers);
  return s;
}

}  // namespace pancyc
