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
#include <set>
#include <sstream>

#include "pancyc/bondy.hpp"
#include "pancyc/bounds.hpp"
#include "pancyc/cycles.hpp"
#include "pancyc/experiment.hpp"
#include "test_oracles.hpp"

namespace pancyc {
namespace {

std::set<std::size_t> full_range(std::size_t n) {
  std::set<std::size_t> s;
  for (std::size_t l = 3; l <= n; ++l) s.insert(l);
  return s;
}

// ---- bondy -----------------------------------------------------------------

TEST(Bondy, ChoosesLargestSandwichK) {
  EXPECT_EQ(bondy_K(64), 4u);
  auto v_of = [](std::uint64_t K) { return (std::uint64_t{1} << (K + 1)) + K - 1; };
  std::size_t fallbacks = 0;
  for (std::size_t n = 8; n <= 4096; ++n) {
    const std::uint64_t K = bondy_K(n);
    EXPECT_LE(v_of(K) + 3, n) << n;
    EXPECT_GT(v_of(K + 1) + 3, n) << n;
    if (2 * v_of(K) < n) {
      // Only when the next K would leave no room for the closing chord.
      ++fallbacks;
      EXPECT_LE(v_of(K + 1), n) << n;
    }
  }
  EXPECT_GT(fallbacks, 0u);
  EXPECT_THROW(bondy_K(7), OutOfRange);
}

TEST(Bondy, SixtyFour) {
  const BondyGraph bg = bondy_construct(64);
  EXPECT_EQ(bg.K, 4u);
  EXPECT_LE(bg.extra.size(), bg.K - 1);
  EXPECT_LE(bg.graph.edge_count(), 64 + 5 + 1 + bg.extra.size());
  for (std::uint64_t i = 0; i <= bg.K; ++i) {
    const Edge e = bg.shortcuts[i];
    EXPECT_EQ(e.v - e.u, (1u << i) + 1);  // an arc of 2^i + 1 edges
    if (i > 0) EXPECT_EQ(bg.shortcuts[i - 1].v, e.u);  // consecutive
  }
  EXPECT_EQ(bg.closing, Edge(0, static_cast<Vertex>(bg.span())));
  EXPECT_TRUE(bondy_verify(bg.graph, bg).ok());
}

TEST(Bondy, SpectrumMatchesEnumeration) {
  for (std::size_t n : {8u, 9u, 10u, 16u, 23u, 32u, 64u, 100u, 128u}) {
    const BondyGraph bg = bondy_construct(n);
    EXPECT_TRUE(bondy_verify(bg.graph, bg).ok()) << n;
    EXPECT_EQ(cycle_spectrum_bruteforce(bg.graph), full_range(n)) << n;
    if (n <= 32) EXPECT_EQ(testing_oracle::spectrum(bg.graph), full_range(n)) << n;
  }
}

TEST(Bondy, EdgeEnvelope) {
  for (std::size_t n = 8; n <= 4096; n = n < 300 ? n + 1 : n + 97) {
    const BondyGraph bg = bondy_construct(n);
    const double lg = std::log2(static_cast<double>(n));
    EXPECT_LE(static_cast<double>(bg.graph.edge_count()), n + lg + 2 * std::log2(lg) + 4) << n;
    EXPECT_LE(bg.graph.edge_count(), bg.edge_limit());
    if (n <= 300) EXPECT_TRUE(bondy_verify(bg.graph, bg).ok()) << n;
  }
  for (std::size_t n : {256u, 1024u, 4096u}) {
    const BondyGraph bg = bondy_construct(n);
    EXPECT_TRUE(bondy_verify(bg.graph, bg).ok()) << n;
  }
}

TEST(Bondy, WithoutClosingChord) {
  const BondyGraph bg = bondy_construct(64);
  Graph g = bg.graph;
  g.remove_edge(bg.closing);
  const auto failed = bondy_verify(g, bg).failed_lengths();
  std::set<std::size_t> expect;
  for (std::uint64_t l = bg.closing_lo(); l <= bg.closing_hi(); ++l) expect.insert(l);
  EXPECT_EQ(std::set<std::size_t>(failed.begin(), failed.end()), expect);
  EXPECT_EQ(bg.closing_lo(), 6u);
  EXPECT_EQ(bg.closing_hi(), 37u);
}

TEST(Bondy, WithoutFirstShortcut) {
  const BondyGraph bg = bondy_construct(64);
  Graph g = bg.graph;
  g.remove_edge(bg.shortcuts[0]);
  const auto failed = bondy_verify(g, bg).failed_lengths();
  // Lengths whose encoding drops the arc of e_0, i.e. an odd offset.
  std::set<std::size_t> expect;
  for (std::size_t l = 3; l <= 64; ++l) {
    if (l >= bg.closing_lo() && l <= bg.closing_hi()) {
      if ((bg.closing_hi() - l) % 2 == 1) expect.insert(l);
    } else if (l >= bg.top_lo() && (64 - l) % 2 == 1) {
      expect.insert(l);
    }
  }
  EXPECT_FALSE(expect.empty());
  EXPECT_EQ(std::set<std::size_t>(failed.begin(), failed.end()), expect);
}

TEST(Bondy, JsonRoundTrip) {
  const BondyGraph bg = bondy_construct(100);
  const auto j = to_json(bg, "t");
  const BondyGraph back = bondy_from_json(nlohmann::json::parse(j.dump()), bg.graph);
  EXPECT_EQ(back.shortcuts, bg.shortcuts);
  EXPECT_EQ(back.extra, bg.extra);
  EXPECT_TRUE(bondy_verify(back.graph, back).ok());
  nlohmann::json bad = j;
  bad["format"] = "x";
  EXPECT_THROW(bondy_from_json(bad, bg.graph), ParseError);
}

// ---- bounds ----------------------------------------------------------------

TEST(Shi, Formula) {
  EXPECT_EQ(shi_cycle_bound(0), 1u);
  EXPECT_EQ(shi_cycle_bound(1), 3u);
  EXPECT_EQ(shi_cycle_bound(2), 7u);
  EXPECT_THROW(shi_cycle_bound(63), OutOfRange);
}

TEST(Shi, TightOnK4) {
  const Graph k4 = complete_graph(4);
  EXPECT_EQ(testing_oracle::all_cycles(k4).size(), 7u);
  EXPECT_EQ(count_simple_cycles(k4), shi_cycle_bound(2));
  EXPECT_TRUE(check_shi(k4));
}

TEST(Shi, CycleWithOneChord) {
  for (std::size_t n = 4; n <= 12; ++n) {
    Graph g = cycle_graph(n);
    g.add_edge(0, static_cast<Vertex>(n / 2));
    EXPECT_EQ(count_simple_cycles(g), 3u);
    EXPECT_TRUE(check_shi(g));
  }
  EXPECT_THROW(check_shi(Graph(5)), OutOfRange);
}

TEST(Shi, RandomSweep) {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng.below(9);
    const std::size_t m = n + rng.below(5);
    // Random spanning tree plus random extra edges.
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(v, static_cast<Vertex>(rng.below(v)));
    while (g.edge_count() < std::min(m, n * (n - 1) / 2)) {
      const auto u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
      if (u != v) g.add_edge(u, v);
    }
    EXPECT_EQ(count_simple_cycles(g), testing_oracle::all_cycles(g).size());
    EXPECT_TRUE(check_shi(g));
  }
}

TEST(Pex, LowerBound) {
  EXPECT_DOUBLE_EQ(pex_lower_bound(17), 3.0);
  EXPECT_DOUBLE_EQ(pex_lower_bound(5), 1.0);
  EXPECT_DOUBLE_EQ(pex_lower_bound(3), 0.0);
  EXPECT_THROW(pex_lower_bound(2), OutOfRange);
}

TEST(Pex, TinySpectrumMatchesOracle) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.below(7);
    Graph g(n);
    std::vector<std::uint32_t> adj(n, 0);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (rng.below(2)) g.add_edge(u, v);
      }
    }
    for (const Edge& e : g.edges()) {
      adj[e.u] |= 1u << e.v;
      adj[e.v] |= 1u << e.u;
    }
    std::uint32_t want = 0;
    for (std::size_t l : testing_oracle::spectrum(g)) want |= 1u << l;
    EXPECT_EQ(tiny_spectrum_mask(adj), want);
  }
}

// Independent check: no pancyclic spanning subgraph with fewer than n + k
// edges, and one with exactly n + k, by trying all edge subsets.
bool exists_pancyclic_with(const Graph& host, std::size_t edges) {
  const std::vector<Edge> all = host.edges();
  const std::size_t n = host.vertex_count();
  if (edges > all.size()) return false;
  std::vector<bool> pick(all.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(edges), true);
  do {
    Graph g(n);
    std::vector<std::size_t> deg(n, 0);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (pick[i]) {
        g.add_edge(all[i]);
        ++deg[all[i].u];
        ++deg[all[i].v];
      }
    }
    if (std::any_of(deg.begin(), deg.end(), [](std::size_t d) { return d < 2; })) continue;
    if (testing_oracle::spectrum(g) == full_range(n)) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

TEST(Pex, CompleteGraphsFrozen) {
  // Oracle output for n = 3..9, frozen.
  const std::vector<std::size_t> frozen{0, 1, 1, 2, 2, 2, 3};
  for (std::size_t n = 3; n <= 9; ++n) {
    const PexResult r = pex_exact_tiny(n, complete_graph(n));
    ASSERT_TRUE(r.exact.has_value());
    EXPECT_EQ(*r.exact, frozen[n - 3]) << n;
    EXPECT_GE(static_cast<double>(*r.exact), std::ceil(r.lower_bound)) << n;
    EXPECT_EQ(r.method, "oracle");
    EXPECT_EQ(r.hamilton_cycles, 1u);
  }
}

TEST(Pex, CompleteGraphsBruteForce) {
  for (std::size_t n = 3; n <= 7; ++n) {
    const Graph kn = complete_graph(n);
    const std::size_t k = *pex_exact_tiny(n, kn).exact;
    EXPECT_TRUE(exists_pancyclic_with(kn, n + k)) << n;
    if (k > 0) EXPECT_FALSE(exists_pancyclic_with(kn, n + k - 1)) << n;
  }
}

TEST(Pex, OtherHosts) {
  EXPECT_THROW(pex_exact_tiny(5, cycle_graph(5)), HostNotPancyclic);
  EXPECT_THROW(pex_exact_tiny(10, complete_graph(10)), OutOfRange);
  EXPECT_THROW(pex_exact_tiny(5, complete_graph(6)), OutOfRange);
  // The Bondy graph on 8 vertices, and K_7 minus three disjoint edges.
  const Graph b8 = bondy_construct(8).graph;
  const PexResult r = pex_exact_tiny(8, b8);
  ASSERT_TRUE(r.exact.has_value());
  EXPECT_TRUE(exists_pancyclic_with(b8, 8 + *r.exact));
  if (*r.exact > 0) EXPECT_FALSE(exists_pancyclic_with(b8, 8 + *r.exact - 1));
  Graph h = complete_graph(7);
  h.remove_edge(0, 1);
  h.remove_edge(2, 3);
  h.remove_edge(4, 5);
  const PexResult rh = pex_exact_tiny(7, h);
  EXPECT_GT(rh.hamilton_cycles, 1u);
  EXPECT_TRUE(exists_pancyclic_with(h, 7 + *rh.exact));
  if (*rh.exact > 0) EXPECT_FALSE(exists_pancyclic_with(h, 7 + *rh.exact - 1));
  EXPECT_EQ(to_json(rh).at("exact"), *rh.exact);
}

// ---- experiment -------------------------------------------------------------

TEST(Experiment, ShapeAndThreadIndependence) {
  ExperimentConfig cfg;
  cfg.grid = {64, 100};
  cfg.seeds = 3;
  cfg.threads = 1;
  const auto one = run_experiment(cfg);
  cfg.threads = 3;
  const auto three = run_experiment(cfg);
  ASSERT_EQ(one.size(), 6u);
  ASSERT_EQ(three.size(), 6u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].n, i < 3 ? 64u : 100u);
    EXPECT_EQ(one[i].seed, 1 + i % 3);
    EXPECT_EQ(one[i].success, three[i].success);
    EXPECT_EQ(one[i].edges, three[i].edges);
    EXPECT_EQ(one[i].step_ok, three[i].step_ok);
    if (one[i].success) {
      EXPECT_TRUE(std::all_of(one[i].step_ok.begin(), one[i].step_ok.end(), [](bool b) { return b; }));
      EXPECT_GT(one[i].ratio, 0.0);
      EXPECT_TRUE(std::isfinite(one[i].ratio));
      EXPECT_EQ(one[i].excess, one[i].edges - one[i].n);
    } else {
      EXPECT_FALSE(one[i].failure.empty());
    }
  }
  std::ostringstream csv;
  write_csv(csv, one);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kExperimentCsvHeader);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 12);
  }
  EXPECT_EQ(rows, 6u);

  const auto sum = experiment_summary(cfg, one);
  ASSERT_EQ(sum.at("per_n").size(), 2u);
  EXPECT_EQ(sum.at("per_n")[0].at("runs"), 3);
  EXPECT_EQ(sum.at("per_n")[0].at("params"), to_json(derive_params(64, Mode::Practical)));
}

TEST(Experiment, FailuresAreData) {
  ExperimentConfig cfg;
  cfg.grid = {200};
  cfg.seeds = 1;
  cfg.mode = Mode::Paper;  // degenerate at this n
  const auto rs = run_experiment(cfg);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_FALSE(rs[0].success);
  EXPECT_FALSE(rs[0].failure.empty());
  EXPECT_EQ(rs[0].ratio, 0.0);
}

}  // namespace
}  // namespace pancyc
