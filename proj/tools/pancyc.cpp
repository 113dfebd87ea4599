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

// pancyc command-line tool. Exit codes: 0 success, 1 domain failure, 2 usage.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pancyc/bondy.hpp"
#include "pancyc/bounds.hpp"
#include "pancyc/certificate.hpp"
#include "pancyc/cycles.hpp"
#include "pancyc/experiment.hpp"
#include "pancyc/params.hpp"
#include "pancyc/pipeline.hpp"
#include "pancyc/sampler.hpp"

namespace {

using namespace pancyc;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_set(const std::set<std::size_t>& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t x : s) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

// Compresses sorted lengths into ranges for messages.
std::string format_ranges(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j + 1 < xs.size() && xs[j + 1] == xs[j] + 1) ++j;
    if (!out.empty()) out += ",";
    out += std::to_string(xs[i]);
    if (j > i) out += "-" + std::to_string(xs[j]);
    i = j + 1;
  }
  return out;
}

std::map<std::string, std::uint64_t> parse_overrides(const std::vector<std::string>& items) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& kv : items) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected KEY=VALUE, got " + kv);
    try {
      out[kv.substr(0, eq)] = std::stoull(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--param", "bad value in " + kv);
    }
  }
  return out;
}

struct BudgetFlags {
  std::size_t restarts = 50;
  std::size_t steps = 0;
  std::size_t attempts = PipelineOptions{}.attempts;

  void add(CLI::App* app) {
    app->add_option("--budget-restarts", restarts, "search restarts per call")->capture_default_str();
    app->add_option("--budget-steps", steps, "steps per restart (0 means 20n)")->capture_default_str();
    app->add_option("--attempts", attempts, "full pipeline attempts")->capture_default_str();
  }
  SearchBudget budget() const { return SearchBudget{restarts, steps, 0}; }
};

void print_report(const VerificationReport& r) {
  std::cout << "n=" << r.n << " edges=" << r.edge_count << " budget=" << r.budget
            << " budget_ok=" << r.budget_ok << " hamilton_ok=" << r.hamilton_ok
            << " registry_ok=" << r.registry_ok << " pancyclic=" << r.pancyclic << "\n";
  for (const auto& note : r.notes) std::cout << "note: " << note << "\n";
  const auto failed = r.failed_lengths();
  if (!failed.empty()) {
    std::cout << "failed lengths: " << format_ranges(failed) << "\n";
    std::size_t shown = 0;
    for (const auto& v : r.per_length) {
      if (v.ok) continue;
      std::cout << "  " << v.length << " [" << v.kind << "] " << v.detail << "\n";
      if (++shown == 10) break;
    }
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Sparse pancyclic subgraphs of random graphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "sample the five layers of G(n, p*)");
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_graph, gen_layers;
  gen->add_option("--n", gen_n, "vertices")->required()->check(CLI::Range(16, 1 << 24));
  gen->add_option("--seed", gen_seed, "random seed")->required();
  gen->add_option("--out-graph", gen_graph, "union edge list")->required();
  gen->add_option("--out-layers", gen_layers, "per-layer sample");

  // construct
  auto* con = app.add_subcommand("construct", "sample and build H5 with its certificate");
  std::size_t con_n = 0;
  std::uint64_t con_seed = 0;
  std::string con_mode = "practical", con_graph, con_cert;
  std::vector<std::string> con_params;
  BudgetFlags con_budget;
  con->add_option("--n", con_n, "vertices")->required()->check(CLI::Range(16, 1 << 24));
  con->add_option("--seed", con_seed, "random seed")->required();
  con->add_option("--mode", con_mode, "paper or practical")->check(CLI::IsMember({"paper", "practical"}))->capture_default_str();
  con->add_option("--param", con_params, "parameter override KEY=VALUE");
  con_budget.add(con);
  con->add_option("--out-graph", con_graph, "H5 edge list")->required();
  con->add_option("--out-cert", con_cert, "certificate JSON")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "check a graph against its certificate");
  std::string ver_graph, ver_cert, ver_report;
  ver->add_option("--graph", ver_graph, "edge list")->required();
  ver->add_option("--cert", ver_cert, "certificate or Bondy table JSON")->required();
  ver->add_option("--report", ver_report, "report JSON");

  // spectrum
  auto* spe = app.add_subcommand("spectrum", "cycle lengths of a graph");
  std::string spe_graph, spe_method = "auto";
  spe->add_option("--graph", spe_graph, "edge list")->required();
  spe->add_option("--method", spe_method, "enumerate, search or auto")
      ->check(CLI::IsMember({"enumerate", "search", "auto"}))->capture_default_str();

  // bondy
  auto* bon = app.add_subcommand("bondy", "deterministic sparse pancyclic graph on n vertices");
  std::size_t bon_n = 0;
  std::string bon_graph, bon_cert;
  bon->add_option("--n", bon_n, "vertices")->required()->check(CLI::Range(8, 1 << 24));
  bon->add_option("--out-graph", bon_graph, "edge list")->required();
  bon->add_option("--out-cert", bon_cert, "decode table JSON")->required();

  // pex
  auto* pex = app.add_subcommand("pex", "exact pancyclicity excess for tiny hosts");
  std::size_t pex_n = 0;
  std::string pex_host = "complete", pex_out = "-";
  pex->add_option("--n", pex_n, "vertices")->required()->check(CLI::Range(3, 64));
  pex->add_option("--host", pex_host, "'complete' or an edge-list path")->capture_default_str();
  pex->add_option("--out", pex_out, "result JSON")->capture_default_str();

  // experiment
  auto* exp = app.add_subcommand("experiment", "success rates and excess over a grid of n");
  std::vector<std::size_t> exp_grid;
  std::size_t exp_seeds = 20, exp_threads = 1;
  std::uint64_t exp_first = 1;
  std::string exp_mode = "practical", exp_csv, exp_summary;
  BudgetFlags exp_budget;
  exp->add_option("--grid", exp_grid, "values of n")->required()->delimiter(',')->check(CLI::Range(16, 1 << 20));
  exp->add_option("--seeds", exp_seeds, "seeds per n")->capture_default_str();
  exp->add_option("--first-seed", exp_first, "first seed")->capture_default_str();
  exp->add_option("--mode", exp_mode, "paper or practical")->check(CLI::IsMember({"paper", "practical"}))->capture_default_str();
  exp->add_option("--threads", exp_threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  exp_budget.add(exp);
  exp->add_option("--csv", exp_csv, "per-run CSV")->required();
  exp->add_option("--summary", exp_summary, "summary JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::map<std::string, std::uint64_t> overrides;
  try {
    overrides = parse_overrides(con_params);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*gen) {
      const LayerSample s = sample_layers(gen_n, layer_probs(gen_n), gen_seed);
      write_text(gen_graph, to_edge_list(s.union_graph));
      if (!gen_layers.empty()) {
        std::ostringstream os;
        write_layer_sample(os, s);
        write_text(gen_layers, os.str());
      }
      std::cout << "n=" << gen_n << " edges=" << s.union_graph.edge_count() << " p*=" << s.probs.p_star << "\n";
      return 0;
    }

    if (*con) {
      ParamSet ps = derive_params(con_n, parse_mode(con_mode));
      if (!overrides.empty()) ps = apply_overrides(ps, overrides);
      const LayerSample s = sample_layers(con_n, layer_probs(con_n), con_seed);
      SearchBudget b = con_budget.budget();
      b.seed = mix_seed(0, con_seed);  // as in the experiment harness
      const PipelineResult r = run_pipeline(s, ps, b, PipelineOptions{con_budget.attempts});
      for (const auto& rec : r.log) {
        std::cout << "step " << rec.step << (rec.ok ? " ok" : " FAILED") << " +" << rec.edges_added << " edges";
        if (!rec.detail.empty()) std::cout << " (" << rec.detail << ")";
        std::cout << "\n";
      }
      if (!r.success) {
        std::cerr << "construction failed after " << r.attempts << " attempts: " << r.detail << "\n";
        return 1;
      }
      write_text(con_graph, to_edge_list(r.H));
      write_text(con_cert, to_json(*r.certificate, utc_now()).dump(1) + "\n");
      std::cout << "edges=" << r.H.edge_count() << " excess=" << r.H.edge_count() - con_n
                << " budget=" << edge_budget(ps) << " attempts=" << r.attempts << "\n";
      return 0;
    }

    if (*ver) {
      const Graph g = parse_edge_list(read_text(ver_graph));
      const nlohmann::json j = read_json(ver_cert);
      VerificationReport rep;
      if (j.value("format", "") == "pancyc-bondy") {
        const BondyGraph bg = bondy_from_json(j, g);
        rep = bondy_verify(g, bg);
      } else {
        rep = verify(g, certificate_from_json(j));
      }
      if (!ver_report.empty()) write_text(ver_report, to_json(rep).dump(1) + "\n");
      print_report(rep);
      return rep.ok() ? 0 : 1;
    }

    if (*spe) {
      const Graph g = parse_edge_list(read_text(spe_graph));
      std::set<std::size_t> s;
      if (spe_method == "enumerate") {
        s = cycle_spectrum_bruteforce(g);
      } else if (spe_method == "search") {
        s = cycle_spectrum_search(g);
      } else {
        try {
          s = cycle_spectrum_bruteforce(g);
        } catch (const CapExceeded&) {
          s = cycle_spectrum_search(g);
        }
      }
      std::cout << format_set(s) << "\n";
      return 0;
    }

    if (*bon) {
      const BondyGraph bg = bondy_construct(bon_n);
      write_text(bon_graph, to_edge_list(bg.graph));
      write_text(bon_cert, to_json(bg, utc_now()).dump(1) + "\n");
      std::cout << "n=" << bon_n << " K=" << bg.K << " edges=" << bg.graph.edge_count()
                << " extra=" << bg.extra.size() << "\n";
      return 0;
    }

    if (*pex) {
      const Graph host = pex_host == "complete" ? complete_graph(pex_n) : parse_edge_list(read_text(pex_host));
      PexResult r;
      if (pex_n > kPexMaxN) {
        r.n = pex_n;
        r.lower_bound = pex_lower_bound(pex_n);
        r.method = "bound-only";
      } else {
        r = pex_exact_tiny(pex_n, host);
      }
      write_text(pex_out, to_json(r).dump(1) + "\n");
      return 0;
    }

    if (*exp) {
      ExperimentConfig cfg;
      cfg.grid = exp_grid;
      cfg.seeds = exp_seeds;
      cfg.first_seed = exp_first;
      cfg.mode = parse_mode(exp_mode);
      cfg.budget = exp_budget.budget();
      cfg.pipeline.attempts = exp_budget.attempts;
      cfg.threads = exp_threads;
      const auto records = run_experiment(cfg);
      std::ostringstream csv;
      write_csv(csv, records);
      write_text(exp_csv, csv.str());
      const auto summary = experiment_summary(cfg, records);
      write_text(exp_summary, summary.dump(1) + "\n");
      for (const auto& e : summary.at("per_n")) {
        std::cout << "n=" << e.at("n") << " success=" << e.at("successes") << "/" << e.at("runs")
                  << " mean_ratio=" << e.at("mean_ratio") << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
