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
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pancyc/errors.hpp"
#include "pancyc/sampler.hpp"

namespace pancyc {

enum class Mode { Paper, Practical };

inline std::string to_string(Mode m) { return m == Mode::Paper ? "paper" : "practical"; }

inline Mode parse_mode(const std::string& s) {
  if (s == "paper") return Mode::Paper;
  if (s == "practical") return Mode::Practical;
  throw ParseError("unknown mode '" + s + "'");
}

inline std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

struct ParamSet {
  std::size_t n = 0;
  Mode mode = Mode::Practical;
  std::uint64_t K0 = 1;
  std::uint64_t b = 2;
  std::uint64_t t = 1;
  std::uint64_t d = 1;
  double beta = 0.0;
  std::uint64_t K = 1;
  std::uint64_t L = 3;
  std::uint64_t m = 0;
  std::uint64_t ell_star = 0;
  std::uint64_t arity = 2;  // tree arity the depth d was sized for

  // l_i = 2^i + 1
  static constexpr std::uint64_t ell(std::uint64_t i) { return (std::uint64_t{1} << i) + 1; }
  std::uint64_t base_span() const { return ipow(b, t); }                // b^t
  std::uint64_t singles_top() const { return (d + b + 1) * t; }         // (d+b+1)t
  std::uint64_t gadget_length() const { return t * b + 1; }             // |C_short|
  std::uint64_t star_length() const { return (K0 + 1) * (d + 3); }      // |C*|
  std::uint64_t gadget_path_length(std::uint64_t i, std::uint64_t j) const {
    return d + 2 + j * ipow(b, i);
  }
  std::size_t sigma(std::uint64_t i, std::uint64_t j) const { return i * b + j + 1; }

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

// Raw (pre-rounding) values of the closed-form parameter formulas at n.
// Entries are empty when the formula is undefined at this n.
struct FormulaValues {
  double ln_n = 0, lnln_n = 0, lnlnln_n = 0;
  std::optional<double> K0_arg;  // log2(ln n / (6 lnlnln n))
  double b_raw = 0;              // ln ln n
  double t_raw = 0;              // log_b ln n
  double beta = 0;
  double tree_base = 0;          // 1/(5 beta)
  std::optional<double> d_raw;   // log_{1/(5beta)}(n/200)
  double K_raw = 0;              // log2(n / sqrt(ln n))
};

inline FormulaValues formula_values(std::size_t n) {
  using ld = long double;
  const ld nn = static_cast<ld>(n);
  FormulaValues v;
  const ld ln = std::log(nn);
  const ld lnln = std::log(ln);
  const ld lnlnln = std::log(lnln);
  v.ln_n = static_cast<double>(ln);
  v.lnln_n = static_cast<double>(lnln);
  v.lnlnln_n = static_cast<double>(lnlnln);
  if (lnlnln > 0) v.K0_arg = static_cast<double>(std::log2(ln / (6 * lnlnln)));
  v.b_raw = static_cast<double>(lnln);
  const ld b = std::ceil(lnln);
  if (b > 1) v.t_raw = static_cast<double>(std::log(ln) / std::log(b));
  const ld beta = 2 * lnln * lnln / ln;
  v.beta = static_cast<double>(beta);
  const ld base = 1 / (5 * beta);
  v.tree_base = static_cast<double>(base);
  if (base > 1 && nn > 200) v.d_raw = static_cast<double>(std::log(nn / 200) / std::log(base));
  v.K_raw = static_cast<double>(std::log2(nn / std::sqrt(ln)));
  return v;
}

inline std::uint64_t floor_u(double x) { return static_cast<std::uint64_t>(std::floor(x)); }

// Vertices consumed by steps 1-3 (|V(H_3)|).
inline std::uint64_t vertex_demand(const ParamSet& ps) {
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i <= ps.K0; ++i) total += ParamSet::ell(i) + 1;
  total += ps.gadget_length();
  total += (ps.K0 + 1) * (ps.d + 1);
  for (std::uint64_t i = ps.K0 + 1; i <= ps.K; ++i) total += ParamSet::ell(i) - 1;
  for (std::uint64_t i = 0; i < ps.t; ++i) {
    for (std::uint64_t j = 0; j < ps.b; ++j) total += ps.gadget_path_length(i, j) - 1;
  }
  total += ps.d + 1;
  return total;
}

// K + b t + m + (d+b+1) t + 3
inline std::uint64_t edge_budget(const ParamSet& ps) {
  return ps.K + ps.b * ps.t + ps.m + ps.singles_top() + 3;
}

struct CoverageInterval {
  long long lo = 0;
  long long hi = 0;
  std::string source;
};

struct CoverageReport {
  std::vector<CoverageInterval> intervals;
  std::vector<std::size_t> holes;
  bool ok = false;
};

struct LongWindow {
  std::uint64_t index = 0;  // i in [3, m]
  long long ell = 0;        // realized l_i*
};

inline std::vector<CoverageInterval> coverage_intervals(const ParamSet& ps, std::size_t n,
                                                        std::span<const LongWindow> windows) {
  const long long top = static_cast<long long>(ps.singles_top());
  const long long L = static_cast<long long>(ps.L);
  const long long star = static_cast<long long>(ps.ell_star);
  std::vector<CoverageInterval> out;
  out.push_back({3, top, "singles"});
  out.push_back({top + 1, top + static_cast<long long>(ps.base_span()), "base"});
  out.push_back({star, star + L, "binary"});
  if (windows.empty()) {
    for (std::uint64_t i = 3; i <= ps.m; ++i) {
      const long long li = static_cast<long long>(i) * (1LL << ps.K);
      out.push_back({li + 2 - L, li + 2, "long_" + std::to_string(i)});
    }
  } else {
    for (const LongWindow& w : windows) {
      out.push_back({w.ell + 2 - L, w.ell + 2, "long_" + std::to_string(w.index)});
    }
  }
  out.push_back({static_cast<long long>(n) - L, static_cast<long long>(n), "top"});
  return out;
}

// Holes of a union of intervals inside [3, n], by sort-and-sweep.
inline std::vector<std::size_t> coverage_holes(std::vector<CoverageInterval> intervals,
                                               std::size_t n) {
  std::sort(intervals.begin(), intervals.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });
  std::vector<std::size_t> holes;
  long long next = 3;  // smallest length not yet known to be covered
  const long long last = static_cast<long long>(n);
  for (const auto& iv : intervals) {
    if (iv.hi < iv.lo || iv.hi < next) continue;
    for (long long x = next; x < std::min(iv.lo, last + 1); ++x) holes.push_back(static_cast<std::size_t>(x));
    next = std::max(next, iv.hi + 1);
    if (next > last) break;
  }
  for (long long x = next; x <= last; ++x) holes.push_back(static_cast<std::size_t>(x));
  return holes;
}

inline CoverageReport validate_coverage(const ParamSet& ps, std::size_t n,
                                        std::span<const LongWindow> windows = {}) {
  CoverageReport r;
  r.intervals = coverage_intervals(ps, n, windows);
  r.holes = coverage_holes(r.intervals, n);
  r.ok = r.holes.empty();
  return r;
}

// Structural validity; returns the list of violated conditions.
inline std::vector<std::string> param_violations(const ParamSet& ps) {
  std::vector<std::string> bad;
  if (ps.K >= 62) bad.push_back("K too large");
  if (ps.K < 62 && ps.L != (std::uint64_t{1} << (ps.K + 1)) - 1) bad.push_back("L != 2^(K+1)-1");
  if (ps.b < 2) bad.push_back("b < 2");
  if (ps.t < 1) bad.push_back("t < 1");
  if (ps.d < 1) bad.push_back("d < 1");
  if (ps.K < ps.K0) bad.push_back("K < K0");
  if (ps.ell_star != ps.star_length()) bad.push_back("ell* != (K0+1)(d+3)");
  if (ps.base_span() < ps.ell_star) bad.push_back("b^t < ell*");
  // Step 3 takes K-K0 spare edges and e* from every second edge of the Q runs.
  if (ps.K >= ps.K0 && (ps.K0 + 1) * ((ps.d + 3) / 2) < ps.K - ps.K0 + 1) bad.push_back("C* has too few disjoint spare edges");
  if (!bad.empty()) return bad;
  if (!validate_coverage(ps, ps.n).ok) bad.push_back("coverage has holes");
  if (ps.mode == Mode::Practical && vertex_demand(ps) >= ps.n) bad.push_back("vertex demand exceeds n");
  return bad;
}

inline bool is_valid(const ParamSet& ps) { return param_violations(ps).empty(); }

// Share of vertices kept outside steps 1-3 for the Hamilton path of step 4.
inline constexpr double kHamiltonReserve = 0.15;

namespace detail {

inline void choose_digits(ParamSet& ps, double ln_n, std::uint64_t b_min) {
  const double target = std::max(ln_n, static_cast<double>(ps.ell_star));
  const std::uint64_t b_max = std::max<std::uint64_t>(b_min, static_cast<std::uint64_t>(std::ceil(target)));
  std::uint64_t best_cost = ~std::uint64_t{0};
  for (std::uint64_t b = b_min; b <= b_max; ++b) {
    std::uint64_t t = 1;
    while (static_cast<double>(ipow(b, t)) < target) ++t;
    const std::uint64_t cost = (ps.d + b + 1) * t + b * t;
    if (cost < best_cost) {
      best_cost = cost;
      ps.b = b;
      ps.t = t;
    }
  }
}

}  // namespace detail

inline ParamSet derive_params(std::size_t n, Mode mode) {
  if (n < 16) throw OutOfRange("derive_params requires n >= 16");
  const FormulaValues pv = formula_values(n);
  ParamSet ps;
  ps.n = n;
  ps.mode = mode;
  ps.beta = pv.beta;

  if (mode == Mode::Paper) {
    if (!pv.K0_arg || *pv.K0_arg < 1.0) throw FormulaDegenerate("K0");
    ps.K0 = floor_u(*pv.K0_arg);
    ps.b = static_cast<std::uint64_t>(std::ceil(pv.b_raw));
    if (ps.b < 2) throw FormulaDegenerate("b");
    ps.t = static_cast<std::uint64_t>(std::ceil(pv.t_raw));
    if (ps.t < 1) throw FormulaDegenerate("t");
    if (!(pv.beta > 0)) throw FormulaDegenerate("beta");
    if (!pv.d_raw || *pv.d_raw < 1.0) throw FormulaDegenerate("d");
    ps.d = floor_u(*pv.d_raw);
    if (pv.K_raw < 1.0) throw FormulaDegenerate("K");
    ps.K = floor_u(pv.K_raw);
    ps.L = (std::uint64_t{1} << (ps.K + 1)) - 1;
    ps.m = static_cast<std::uint64_t>(n >> ps.K);
    if (ps.m < 1) throw FormulaDegenerate("m");
    ps.ell_star = ps.star_length();
    ps.arity = floor_u(pv.tree_base);
    if (ps.base_span() < ps.ell_star) throw FormulaDegenerate("b^t");
    return ps;
  }

  ps.K0 = (pv.K0_arg && *pv.K0_arg >= 1.0) ? floor_u(*pv.K0_arg) : 1;
  const std::uint64_t b_min =
      std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(pv.b_raw)));
  const double p2 = layer_probs(n).p[1];
  ps.arity = std::max<std::uint64_t>(2, floor_u(static_cast<double>(n) * p2 / 20.0));
  std::uint64_t d_leaf = 1;
  while (static_cast<double>(ipow(ps.arity, d_leaf)) < static_cast<double>(n) / 40.0) ++d_leaf;

  const std::uint64_t K_formula = floor_u(pv.K_raw);
  for (std::uint64_t K = K_formula; K + 1 > ps.K0 && K >= 1; --K) {
    ps.K = K;
    ps.L = (std::uint64_t{1} << (K + 1)) - 1;
    ps.m = static_cast<std::uint64_t>(n >> K);
    // C* must carry K-K0 spare edges plus e*: (K0+1)(d+3) >= 2(K-K0)+4.
    std::uint64_t d = d_leaf;
    while ((ps.K0 + 1) * (d + 3) < 2 * (K - ps.K0) + 4) ++d;
    ps.d = d;
    ps.ell_star = ps.star_length();
    detail::choose_digits(ps, pv.ln_n, b_min);
    const double reserve = std::ceil(kHamiltonReserve * static_cast<double>(n));
    if (static_cast<double>(vertex_demand(ps)) + reserve <= static_cast<double>(n) &&
        validate_coverage(ps, n).ok) {
      return ps;
    }
  }
  throw Infeasible("no practical parameter set fits n=" + std::to_string(n));
}

// Applies KEY=VALUE overrides and re-derives dependent quantities (L, l*).
// Throws Infeasible if the result is not a valid parameter set.
inline ParamSet apply_overrides(ParamSet ps, const std::map<std::string, std::uint64_t>& overrides) {
  for (const auto& [key, value] : overrides) {
    if (key == "K0") ps.K0 = value;
    else if (key == "b") ps.b = value;
    else if (key == "t") ps.t = value;
    else if (key == "d") ps.d = value;
    else if (key == "K") ps.K = value;
    else if (key == "m") ps.m = value;
    else throw ParseError("unknown parameter '" + key + "'");
  }
  if (ps.K < 62) ps.L = (std::uint64_t{1} << (ps.K + 1)) - 1;
  ps.ell_star = ps.star_length();
  const auto bad = param_violations(ps);
  if (!bad.empty()) {
    std::string msg = "invalid parameter overrides:";
    for (const auto& s : bad) msg += " [" + s + "]";
    throw Infeasible(msg);
  }
  return ps;
}

inline nlohmann::json to_json(const ParamSet& ps) {
  return {{"n", ps.n},       {"mode", to_string(ps.mode)}, {"K0", ps.K0},   {"b", ps.b},
          {"t", ps.t},       {"d", ps.d},                  {"beta", ps.beta}, {"K", ps.K},
          {"L", ps.L},       {"m", ps.m},                  {"ell_star", ps.ell_star},
          {"arity", ps.arity}, {"budget", edge_budget(ps)}};
}

inline ParamSet params_from_json(const nlohmann::json& j) {
  ParamSet ps;
  ps.n = j.at("n").get<std::size_t>();
  ps.mode = parse_mode(j.at("mode").get<std::string>());
  ps.K0 = j.at("K0").get<std::uint64_t>();
  ps.b = j.at("b").get<std::uint64_t>();
  ps.t = j.at("t").get<std::uint64_t>();
  ps.d = j.at("d").get<std::uint64_t>();
  ps.beta = j.at("beta").get<double>();
  ps.K = j.at("K").get<std::uint64_t>();
  ps.L = j.at("L").get<std::uint64_t>();
  ps.m = j.at("m").get<std::uint64_t>();
  ps.ell_star = j.at("ell_star").get<std::uint64_t>();
  ps.arity = j.value("arity", std::uint64_t{2});
  return ps;
}

}  // namespace pancyc
