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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pancyc/certificate.hpp"
#include "pancyc/params.hpp"
#include "pancyc/pathfinder.hpp"
#include "pancyc/pipeline.hpp"
#include "pancyc/sampler.hpp"

namespace pancyc {

struct ExperimentRecord {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Mode mode = Mode::Practical;
  std::array<bool, 5> step_ok{};
  bool success = false;         // all steps ok and verified pancyclic
  std::size_t edges = 0;
  std::size_t excess = 0;       // edges - n
  double ratio = 0;             // excess / log2 n, successes only
  double runtime_ms = 0;
  std::size_t attempts = 0;
  std::string failure;          // empty on success
  std::optional<ParamSet> params;
};

struct ExperimentConfig {
  std::vector<std::size_t> grid;
  std::size_t seeds = 20;
  std::uint64_t first_seed = 1;
  Mode mode = Mode::Practical;
  SearchBudget budget;
  PipelineOptions pipeline;
  std::size_t threads = 1;
};

// Sample, construct and verify one (n, seed). Failures become data.
inline ExperimentRecord run_single(std::size_t n, std::uint64_t seed, const ExperimentConfig& cfg) {
  ExperimentRecord r;
  r.n = n;
  r.seed = seed;
  r.mode = cfg.mode;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const ParamSet ps = derive_params(n, cfg.mode);
    r.params = ps;
    const LayerSample sample = sample_layers(n, layer_probs(n), seed);
    SearchBudget b = cfg.budget;
    b.seed = mix_seed(cfg.budget.seed, seed);
    const PipelineResult pr = run_pipeline(sample, ps, b, cfg.pipeline);
    for (int k = 1; k <= 5; ++k) r.step_ok[k - 1] = pr.step_ok(k);
    r.attempts = pr.attempts;
    r.edges = pr.H.edge_count();
    if (!pr.success) {
      r.failure = pr.detail;
    } else {
      const VerificationReport rep = verify(pr.H, *pr.certificate);
      r.success = rep.ok();
      if (!r.success) r.failure = "verification failed";
    }
  } catch (const Error& e) {
    r.failure = e.what();
  }
  r.excess = r.edges >= n ? r.edges - n : 0;
  if (r.success) r.ratio = static_cast<double>(r.excess) / std::log2(static_cast<double>(n));
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Records come back in (grid order, seed order) whatever the thread count.
inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t n : cfg.grid) {
    for (std::size_t s = 0; s < cfg.seeds; ++s) jobs.emplace_back(n, cfg.first_seed + s);
  }
  std::vector<ExperimentRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = run_single(jobs[i].first, jobs[i].second, cfg);
  };
  const std::size_t threads = std::clamp<std::size_t>(cfg.threads, 1, std::max<std::size_t>(1, jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return out;
}

inline constexpr const char* kExperimentCsvHeader =
    "n,seed,mode,step1,step2,step3,step4,step5,success,edges,excess,ratio,runtime_ms";

// Runtime is wall-clock and the only column that varies between identical runs.
inline void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& rs) {
  os << kExperimentCsvHeader << '\n';
  for (const auto& r : rs) {
    os << r.n << ',' << r.seed << ',' << to_string(r.mode);
    for (bool b : r.step_ok) os << ',' << (b ? 1 : 0);
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio);
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", r.runtime_ms);
    os << ',' << (r.success ? 1 : 0) << ',' << r.edges << ',' << r.excess << ',' << ratio << ',' << ms << '\n';
  }
}

inline nlohmann::json experiment_summary(const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& rs) {
  nlohmann::json j;
  j["format"] = "pancyc-experiment";
  j["mode"] = to_string(cfg.mode);
  j["seeds"] = cfg.seeds;
  j["first_seed"] = cfg.first_seed;
  j["budget"] = {{"max_restarts", cfg.budget.max_restarts}, {"max_steps", cfg.budget.max_steps},
                 {"seed", cfg.budget.seed}};
  j["attempts"] = cfg.pipeline.attempts;
  auto& per = j["per_n"] = nlohmann::json::array();
  for (std::size_t n : cfg.grid) {
    std::size_t runs = 0, ok = 0, max_excess = 0;
    double sum_excess = 0, sum_ratio = 0;
    std::array<std::size_t, 5> step_fail{};
    nlohmann::json params = nullptr;
    for (const auto& r : rs) {
      if (r.n != n) continue;
      ++runs;
      if (r.params && params.is_null()) params = to_json(*r.params);
      for (std::size_t k = 0; k < 5; ++k) step_fail[k] += r.step_ok[k] ? 0 : 1;
      if (!r.success) continue;
      ++ok;
      sum_excess += static_cast<double>(r.excess);
      sum_ratio += r.ratio;
      max_excess = std::max(max_excess, r.excess);
    }
    nlohmann::json e = {{"n", n}, {"runs", runs}, {"successes", ok},
                        {"success_rate", runs ? static_cast<double>(ok) / static_cast<double>(runs) : 0.0},
                        {"step_failures", step_fail}, {"params", params}};
    e["mean_excess"] = ok ? nlohmann::json(sum_excess / static_cast<double>(ok)) : nlohmann::json(nullptr);
    e["max_excess"] = ok ? nlohmann::json(max_excess) : nlohmann::json(nullptr);
    e["mean_ratio"] = ok ? nlohmann::json(sum_ratio / static_cast<double>(ok)) : nlohmann::json(nullptr);
    per.push_back(std::move(e));
  }
  return j;
}

}  // namespace pancyc
