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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "pancyc/cycles.hpp"
#include "pancyc/graph.hpp"
#include "pancyc/params.hpp"
#include "pancyc/sampler.hpp"
#include "test_oracles.hpp"

namespace pancyc {
namespace {

Graph petersen() {
  std::vector<Edge> es;
  for (Vertex i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(i, i + 5);
    es.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph::from_edges(10, es);
}

TEST(Graph, NeighborsAndMutation) {
  Graph tri = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(tri.neighbors(0), (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(tri.edge_count(), 3u);
  Graph iso(4);
  EXPECT_TRUE(iso.neighbors(3).empty());
  EXPECT_THROW(iso.neighbors(4), OutOfRange);
  EXPECT_THROW(iso.add_edge(1, 1), OutOfRange);

  Graph g(6);
  EXPECT_TRUE(g.add_edge(0, 3));
  EXPECT_FALSE(g.add_edge(3, 0));
  g.add_edge(2, 3);
  EXPECT_TRUE(g.remove_edge(0, 3));
  EXPECT_FALSE(g.remove_edge(0, 3));
  std::size_t sum = 0;
  for (Vertex v = 0; v < 6; ++v) {
    sum += g.degree(v);
    for (Vertex w : g.neighbors(v)) EXPECT_TRUE(g.has_edge(w, v));
  }
  EXPECT_EQ(sum, 2 * g.edge_count());
}

TEST(Graph, ExternalNeighborhood) {
  Graph tri = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(external_neighborhood(tri, std::vector<Vertex>{0}), (std::vector<Vertex>{1, 2}));
  EXPECT_TRUE(external_neighborhood(tri, std::vector<Vertex>{0, 1, 2}).empty());
  Graph star = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(external_neighborhood(star, std::vector<Vertex>{0}).size(), 3u);
}

TEST(Graph, CheckCycle) {
  Graph c4 = cycle_graph(4);
  EXPECT_TRUE(check_cycle(c4, VertexCycle{{0, 1, 2, 3}}));
  EXPECT_FALSE(check_cycle(c4, VertexCycle{{0, 2, 1, 3}}));
  EXPECT_FALSE(check_cycle(c4, VertexCycle{{0, 1, 0, 1}}));
  EXPECT_FALSE(check_cycle(c4, VertexCycle{{0, 1}}));
}

TEST(Graph, CanonicalFormIsIdempotent) {
  VertexCycle c{{4, 2, 0, 3, 1}};
  VertexCycle once = canonical_cycle(c);
  EXPECT_EQ(once.vertices, (std::vector<Vertex>{0, 2, 4, 1, 3}));
  EXPECT_EQ(canonical_cycle(once), once);
}

TEST(Graph, EdgeListRoundTrip) {
  Graph g = petersen();
  const std::string text = to_edge_list(g);
  EXPECT_EQ(text.substr(0, 6), "10 15\n");
  EXPECT_EQ(parse_edge_list(text), g);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 1\n0 5\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 1\n0 1\n1 2\n"), ParseError);  // trailing data
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n1 0\n"), ParseError);
}

TEST(Cycles, SmallGraphs) {
  const Graph k4 = complete_graph(4);
  const auto cycles = enumerate_simple_cycles(k4);
  EXPECT_EQ(cycles.size(), 7u);
  for (const auto& c : cycles) {
    EXPECT_TRUE(check_cycle(k4, c));
    EXPECT_EQ(canonical_cycle(c), c);
  }
  EXPECT_EQ(cycle_spectrum_bruteforce(k4), (std::set<std::size_t>{3, 4}));
  EXPECT_EQ(count_simple_cycles(cycle_graph(5)), 1u);
  EXPECT_EQ(cycle_spectrum_bruteforce(cycle_graph(9)), (std::set<std::size_t>{9}));
  Graph tree = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {0, 2}, {2, 3}, {2, 4}});
  EXPECT_TRUE(enumerate_simple_cycles(tree).empty());
  const auto ps = cycle_spectrum_bruteforce(petersen());
  EXPECT_FALSE(ps.contains(3));
  EXPECT_FALSE(ps.contains(4));
  EXPECT_TRUE(ps.contains(5));
  EXPECT_THROW(enumerate_simple_cycles(complete_graph(7), 100), CapExceeded);
}

TEST(Cycles, AgreesWithOracleOnRandomGraphs) {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 4 + rng.below(7);
    const double p = 0.2 + 0.5 * rng.unit();
    const Graph g = sample_gnp(n, p, rng.next());
    const auto oracle = testing_oracle::all_cycles(g);
    const auto got = enumerate_simple_cycles(g);
    ASSERT_EQ(got, oracle) << "n=" << n << " trial " << trial;
    std::set<std::size_t> spec;
    for (const auto& c : oracle) spec.insert(c.length());
    EXPECT_EQ(cycle_spectrum_bruteforce(g), spec);
    EXPECT_EQ(cycle_spectrum_search(g), spec);
  }
}

TEST(Cycles, SpectrumMonotoneUnderEdgeDeletion) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = sample_gnp(9, 0.5, rng.next());
    const auto full = cycle_spectrum_bruteforce(g);
    auto es = g.edges();
    if (es.empty()) continue;
    g.remove_edge(es[rng.below(es.size())]);
    for (std::size_t len : cycle_spectrum_bruteforce(g)) EXPECT_TRUE(full.contains(len));
  }
}

TEST(Cycles, SearchOnSparseChordedCycle) {
  // Hamilton cycle on 60 vertices plus chords; compare against enumeration.
  Graph g = cycle_graph(60);
  const std::vector<Edge> chords{{0, 7}, {3, 30}, {10, 45}, {20, 52}, {5, 58}, {33, 40}};
  for (const Edge& e : chords) g.add_edge(e);
  EXPECT_EQ(cycle_spectrum_search(g), cycle_spectrum_bruteforce(g));
}

TEST(Sampler, LayerProbabilitiesMatchHighPrecisionValues) {
  // Reference values evaluated with 30-digit arithmetic.
  const LayerProbs a = layer_probs(1000);
  EXPECT_NEAR(a.p[0], 0.003865289467832131, 1e-15);
  EXPECT_NEAR(a.p[1], 0.17871249582909995, 1e-15);
  EXPECT_NEAR(a.p[3], 0.0331903641277668, 1e-15);
  EXPECT_NEAR(a.p_star, 0.352905740151492, 1e-13);
  EXPECT_EQ(a.p[0], a.p[4]);
  EXPECT_EQ(a.p[1], a.p[2]);
  const LayerProbs b = layer_probs(200);
  EXPECT_NEAR(b.p[0], 0.016673892921414593, 1e-15);
  EXPECT_NEAR(b.p[1], 0.7944031714008593, 1e-14);
  EXPECT_NEAR(b.p[3], 0.14158195748280844, 1e-15);
  EXPECT_NEAR(b.p_star, 0.9649145703545273, 1e-13);
  const LayerProbs c = layer_probs(2000);
  EXPECT_NEAR(c.p[0], 0.002028266984919284, 1e-15);
  EXPECT_NEAR(c.p[1], 0.09368715405882037, 1e-15);
  EXPECT_NEAR(c.p[3], 0.017585318348773388, 1e-15);

  const LayerProbs small = layer_probs(16);
  for (double p : small.p) {
    EXPECT_TRUE(std::isfinite(p));
    EXPECT_GT(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
  for (std::size_t n : {16u, 100u, 1000u, 100000u}) {
    const LayerProbs lp = layer_probs(n);
    EXPECT_GE(lp.p_star, *std::max_element(lp.p.begin(), lp.p.end()));
  }
  EXPECT_THROW(layer_probs(15), OutOfRange);
}

TEST(Sampler, ExtremeProbabilities) {
  EXPECT_EQ(sample_gnp(30, 0.0, 1).edge_count(), 0u);
  EXPECT_EQ(sample_gnp(30, 1.0, 1), complete_graph(30));
  EXPECT_THROW(sample_gnp(30, 1.5, 1), OutOfRange);
}

TEST(Sampler, SparseEdgeCountWithinBinomialBounds) {
  const std::size_t n = 10000;
  const double p = 3.0 / static_cast<double>(n);
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const double mean = p * pairs;
  const double sd = std::sqrt(pairs * p * (1 - p));
  double total = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    const Graph g = sample_gnp(n, p, static_cast<std::uint64_t>(s));
    EXPECT_LT(std::abs(static_cast<double>(g.edge_count()) - mean), 5 * sd);
    total += static_cast<double>(g.edge_count());
  }
  EXPECT_LT(std::abs(total / seeds - mean), 3 * sd / std::sqrt(seeds));
}

TEST(Sampler, DenseEdgeDensityWithinBinomialBounds) {
  const std::size_t n = 120;
  const double p = 0.3;
  const double pairs = n * (n - 1) / 2.0;
  double total = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) total += static_cast<double>(sample_gnp(n, p, 1000 + s).edge_count());
  const double sd_mean = std::sqrt(pairs * p * (1 - p) / seeds);
  EXPECT_LT(std::abs(total / seeds - p * pairs), 3 * sd_mean);
}

TEST(Sampler, LayersAreDeterministicAndConsistent) {
  const LayerProbs probs = layer_probs(400);
  const LayerSample a = sample_layers(400, probs, 99);
  const LayerSample b = sample_layers(400, probs, 99);
  std::size_t sum = 0;
  for (std::size_t i = 1; i <= kLayerCount; ++i) {
    EXPECT_EQ(to_edge_list(a.layer(i)), to_edge_list(b.layer(i)));
    EXPECT_TRUE(is_subgraph(a.layer(i), a.union_graph));
    sum += a.layer(i).edge_count();
    // A single layer regenerates without the others.
    EXPECT_EQ(sample_gnp(400, probs.p[i - 1], layer_seed(99, i)), a.layer(i));
  }
  EXPECT_LE(a.union_graph.edge_count(), sum);
  EXPECT_NE(a.layer(1), a.layer(5));

  LayerProbs zero;
  const LayerSample z = sample_layers(50, zero, 3);
  for (std::size_t i = 1; i <= kLayerCount; ++i) EXPECT_EQ(z.layer(i).edge_count(), 0u);

  std::stringstream ss;
  write_layer_sample(ss, a);
  const LayerSample back = read_layer_sample(ss);
  EXPECT_EQ(back.union_graph, a.union_graph);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.probs.p, a.probs.p);
}

TEST(Params, PracticalValues) {
  struct Row {
    std::size_t n;
    std::uint64_t K, d, ell_star, b, t, m;
  };
  // Values found by the desk derivation of the practical rule.
  const Row rows[] = {{200, 5, 3, 12, 4, 2, 6},
                      {500, 7, 5, 16, 4, 2, 3},
                      {1000, 8, 6, 18, 5, 2, 3},
                      {2000, 9, 7, 20, 5, 2, 3}};
  for (const Row& r : rows) {
    const ParamSet ps = derive_params(r.n, Mode::Practical);
    EXPECT_EQ(ps.K0, 1u) << r.n;
    EXPECT_EQ(ps.K, r.K) << r.n;
    EXPECT_EQ(ps.d, r.d) << r.n;
    EXPECT_EQ(ps.ell_star, r.ell_star) << r.n;
    EXPECT_EQ(ps.b, r.b) << r.n;
    EXPECT_EQ(ps.t, r.t) << r.n;
    EXPECT_EQ(ps.m, r.m) << r.n;
    EXPECT_EQ(ps.L, (std::uint64_t{1} << (ps.K + 1)) - 1);
    EXPECT_TRUE(is_valid(ps)) << r.n;
    EXPECT_GE(ps.base_span(), ps.ell_star);
  }
  const ParamSet k = derive_params(1000, Mode::Practical);
  EXPECT_EQ(k.L, 511u);
}

TEST(Params, ClosedFormValues) {
  // Unrounded K = floor(log2(n / sqrt(ln n))).
  for (auto [n, K] : std::vector<std::pair<std::size_t, std::uint64_t>>{
           {200, 6}, {500, 7}, {1000, 8}, {2000, 9}, {10000, 11}, {1000000, 18}}) {
    EXPECT_EQ(floor_u(formula_values(n).K_raw), K) << n;
  }
  EXPECT_EQ(static_cast<std::uint64_t>(10000) >> 11, 4u);
  const FormulaValues v = formula_values(1000000);
  ASSERT_TRUE(v.K0_arg.has_value());
  EXPECT_NEAR(std::exp2(*v.K0_arg), 2.385153, 1e-5);
  EXPECT_NEAR(v.beta, 0.99812, 1e-4);
  EXPECT_NEAR(v.tree_base, 0.20038, 1e-4);
  EXPECT_FALSE(v.d_raw.has_value());
  try {
    derive_params(1000000, Mode::Paper);
    FAIL() << "expected FormulaDegenerate";
  } catch (const FormulaDegenerate& e) {
    EXPECT_EQ(e.name(), "d");
  }
  EXPECT_THROW(derive_params(1000, Mode::Paper), FormulaDegenerate);
  EXPECT_THROW(derive_params(15, Mode::Practical), OutOfRange);
}

TEST(Params, EllSequence) {
  EXPECT_EQ(ParamSet::ell(0), 2u);
  EXPECT_EQ(ParamSet::ell(1), 3u);
  EXPECT_EQ(ParamSet::ell(2), 5u);
  EXPECT_EQ(ParamSet::ell(3), 9u);
}

TEST(Params, CoverageAndMutations) {
  const ParamSet ps = derive_params(5000, Mode::Practical);
  EXPECT_TRUE(validate_coverage(ps, 5000).ok);
  ParamSet cut = ps;
  cut.m = 1;
  const auto r = validate_coverage(cut, 5000);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.holes.empty());
  EXPECT_GT(r.holes.front(), ps.ell_star + ps.L);
  EXPECT_LT(r.holes.back(), 5000 - ps.L);

  // Up to n = 2000 the binary and top windows already meet.
  ParamSet small = derive_params(1000, Mode::Practical);
  EXPECT_GE(small.ell_star + small.L + 1, 1000 - small.L);
  small.m = 0;
  EXPECT_TRUE(validate_coverage(small, 1000).ok);
}

TEST(Params, EdgeBudgetIsMonotone) {
  const ParamSet base = derive_params(1000, Mode::Practical);
  const std::uint64_t b0 = edge_budget(base);
  EXPECT_EQ(b0, base.K + base.b * base.t + base.m + (base.d + base.b + 1) * base.t + 3);
  for (int field = 0; field < 5; ++field) {
    ParamSet p = base;
    std::uint64_t* f[] = {&p.K, &p.m, &p.t, &p.b, &p.d};
    ++*f[field];
    EXPECT_GT(edge_budget(p), b0) << field;
  }
}

TEST(Params, OverridesRevalidate) {
  const ParamSet ps = derive_params(1000, Mode::Practical);
  const ParamSet same = apply_overrides(ps, {{"K", 8}});
  EXPECT_EQ(same, ps);
  EXPECT_THROW(apply_overrides(derive_params(5000, Mode::Practical), {{"m", 1}}), Infeasible);
  EXPECT_THROW(apply_overrides(ps, {{"t", 1}}), Infeasible);
  EXPECT_THROW(apply_overrides(ps, {{"q", 1}}), ParseError);
  const ParamSet round = params_from_json(to_json(ps));
  EXPECT_EQ(round, ps);
}

TEST(Params, PracticalAlwaysCoversOrThrows) {
  for (std::size_t n = 64; n <= 10000; n += 97) {
    try {
      const ParamSet ps = derive_params(n, Mode::Practical);
      EXPECT_TRUE(validate_coverage(ps, n).ok) << n;
      EXPECT_EQ(ps.ell_star, (ps.K0 + 1) * (ps.d + 3));
      EXPECT_GE(ps.base_span(), ps.ell_star);
    } catch (const Infeasible&) {
    }
  }
}

}  // namespace
}  // namespace pancyc
