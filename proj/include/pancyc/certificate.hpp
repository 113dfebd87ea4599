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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "pancyc/errors.hpp"
#include "pancyc/graph.hpp"
#include "pancyc/params.hpp"

namespace pancyc {

struct BinaryShortcut {
  std::uint64_t index = 0;
  Edge chord;
  std::vector<Vertex> arc;  // chord endpoint to chord endpoint, 2^index + 1 edges

  friend bool operator==(const BinaryShortcut&, const BinaryShortcut&) = default;
};

struct GadgetPath {
  std::uint64_t digit = 0;  // i
  std::uint64_t value = 0;  // j
  Edge edge;                // e_{i,j}
  std::vector<Vertex> path; // P_{i,j}

  friend bool operator==(const GadgetPath&, const GadgetPath&) = default;
};

struct Gadget {
  Edge closing;                 // e_short
  std::vector<Vertex> cycle;    // C_short, v_1 .. v_{tb+1}
  std::vector<GadgetPath> paths;

  friend bool operator==(const Gadget&, const Gadget&) = default;
};

struct StarLink {
  Edge chord;                // e*
  std::vector<Vertex> path;  // P*

  friend bool operator==(const StarLink&, const StarLink&) = default;
};

struct LongShortcut {
  std::uint64_t index = 0;
  Edge chord;
  std::uint64_t ell = 0;  // realized l_i*; the chord has an arc of ell+1 edges

  friend bool operator==(const LongShortcut&, const LongShortcut&) = default;
};

struct SingleShortcut {
  std::uint64_t length = 0;  // cycle length it closes
  Edge chord;                // arc of length-1 edges

  friend bool operator==(const SingleShortcut&, const SingleShortcut&) = default;
};

struct Certificate {
  std::size_t n = 0;
  ParamSet params;
  std::uint64_t ell_star = 0;
  std::vector<Vertex> hamilton;
  std::vector<Vertex> star_cycle;
  std::vector<BinaryShortcut> binary;
  Gadget gadget;
  StarLink star;
  std::vector<LongShortcut> long_shortcuts;
  std::vector<SingleShortcut> singles;

  std::uint64_t L() const { return params.L; }

  // Every chord of C_H named by the certificate (duplicates removed).
  std::vector<Edge> chords() const {
    std::vector<Edge> out;
    for (const auto& b : binary) out.push_back(b.chord);
    out.push_back(gadget.closing);
    for (const auto& p : gadget.paths) out.push_back(p.edge);
    out.push_back(star.chord);
    for (const auto& f : long_shortcuts) out.push_back(f.chord);
    for (const auto& g : singles) out.push_back(g.chord);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// Forward run of C_H positions start, start+1, ..., start+len (mod n).
struct ArcInterval {
  std::size_t start = 0;
  std::size_t len = 0;  // edges
};

// Walks a Hamilton cycle by position. Cycles are composed from one base arc
// closed by a chord (or the whole cycle) with some sub-arcs swapped for
// their chords.
class CycleLayout {
 public:
  CycleLayout() = default;
  explicit CycleLayout(const std::vector<Vertex>& cycle) : cycle_(cycle) {
    const std::size_t n = cycle.size();
    pos_.assign(n, kAbsent);
    for (std::size_t i = 0; i < n; ++i) {
      if (cycle[i] >= n || pos_[cycle[i]] != kAbsent) {
        throw MalformedCertificate("Hamilton cycle is not a permutation of 0..n-1");
      }
      pos_[cycle[i]] = i;
    }
  }

  std::size_t n() const noexcept { return cycle_.size(); }
  std::size_t position(Vertex v) const {
    if (v >= pos_.size()) throw MalformedCertificate("vertex " + std::to_string(v) + " not on C_H");
    return pos_[v];
  }
  Vertex at(std::size_t p) const { return cycle_[p % cycle_.size()]; }

  // Lengths of the two arcs joining the chord endpoints: forward from u, forward from v.
  std::pair<std::size_t, std::size_t> arc_lengths(Edge e) const {
    const std::size_t pu = position(e.u), pv = position(e.v);
    const std::size_t f = (pv + n() - pu) % n();
    return {f, n() - f};
  }

  // The arc of the chord with exactly `len` edges. When both arcs qualify
  // (len = n/2) the one holding every arc of `inside` is taken.
  ArcInterval chord_arc(Edge e, std::size_t len, const std::string& role,
                        std::span<const ArcInterval> inside = {}) const {
    if (e.u == e.v) throw NotAChord(role + ": degenerate chord");
    const auto [f, b] = arc_lengths(e);
    const ArcInterval fwd{position(e.u), len}, bwd{position(e.v), len};
    auto holds = [&](const ArcInterval& outer) {
      return std::all_of(inside.begin(), inside.end(), [&](const ArcInterval& iv) { return contains(outer, iv); });
    };
    if (f == len && b == len) return holds(fwd) ? fwd : bwd;
    if (f == len) return fwd;
    if (b == len) return bwd;
    throw MalformedCertificate(role + ": chord has arcs of " + std::to_string(f) + " and " +
                               std::to_string(b) + " edges, expected " + std::to_string(len));
  }

  // A recorded path must run along C_H in one direction.
  ArcInterval locate_path(const std::vector<Vertex>& path, const std::string& role) const {
    if (path.size() < 2) throw MalformedCertificate(role + ": path too short");
    const std::size_t len = path.size() - 1;
    const std::size_t p0 = position(path.front());
    bool fwd = true, bwd = true;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const std::size_t pk = position(path[k]);
      if (pk != (p0 + k) % n()) fwd = false;
      if (pk != (p0 + n() - k % n()) % n()) bwd = false;
    }
    if (fwd) return {p0, len};
    if (bwd) return {(p0 + n() - len) % n(), len};
    throw MalformedCertificate(role + ": path is not an arc of C_H");
  }

  bool contains(const ArcInterval& outer, const ArcInterval& inner) const {
    const std::size_t off = (inner.start + n() - outer.start) % n();
    return inner.len <= outer.len && off <= outer.len - inner.len;
  }

  // base == nullopt means the whole Hamilton cycle. Interiors of `drops` are
  // removed, which closes each dropped arc by its chord.
  VertexCycle compose(const std::optional<ArcInterval>& base, const std::vector<ArcInterval>& drops,
                      const std::string& role) const {
    std::vector<std::uint8_t> gone(n(), 0);
    for (const ArcInterval& d : drops) {
      if (base && !contains(*base, d)) throw MalformedCertificate(role + ": arc outside the base arc");
      for (std::size_t k = 1; k < d.len; ++k) {
        auto& g = gone[(d.start + k) % n()];
        if (g) throw MalformedCertificate(role + ": overlapping arcs");
        g = 1;
      }
    }
    for (const ArcInterval& d : drops) {
      if (gone[d.start] || gone[(d.start + d.len) % n()]) {
        throw MalformedCertificate(role + ": arc endpoint inside another arc");
      }
    }
    VertexCycle c;
    const std::size_t start = base ? base->start : 0;
    const std::size_t count = base ? base->len + 1 : n();
    c.vertices.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t p = (start + k) % n();
      if (!gone[p]) c.vertices.push_back(cycle_[p]);
    }
    return c;
  }

 private:
  static constexpr std::size_t kAbsent = ~std::size_t{0};
  std::vector<Vertex> cycle_;
  std::vector<std::size_t> pos_;
};

// Case tags follow the fixed decoding order.
enum class DecodeCase : char { Single = 'a', Base = 'b', Binary = 'c', Long = 'd', Top = 'e' };

struct DecodedCycle {
  DecodeCase kind = DecodeCase::Top;
  std::uint64_t window = 0;  // i for case d
  std::uint64_t k = 0;       // the encoded offset
  VertexCycle cycle;
};

// Checks the certificate's internal geometry once, then decodes lengths
// without further searching.
class Decoder {
 public:
  explicit Decoder(const Certificate& cert) : cert_(&cert), layout_(cert.hamilton) {
    const ParamSet& ps = cert.params;
    if (cert.hamilton.size() != cert.n) throw MalformedCertificate("C_H does not have n vertices");
    if (cert.binary.size() != ps.K + 1) throw MalformedCertificate("expected K+1 binary shortcuts");
    binary_.resize(ps.K + 1);
    std::vector<bool> seen(ps.K + 1, false);
    for (const auto& b : cert.binary) {
      if (b.index > ps.K || seen[b.index]) throw MalformedCertificate("bad binary index");
      seen[b.index] = true;
      const std::string role = "binary " + std::to_string(b.index);
      if (b.arc.size() != ParamSet::ell(b.index) + 1) throw MalformedCertificate(role + ": wrong arc length");
      if (Edge(b.arc.front(), b.arc.back()) != b.chord) throw MalformedCertificate(role + ": arc does not join the chord");
      binary_[b.index] = layout_.locate_path(b.arc, role);
    }

    // Case c base: e* plus its arc through C* and every binary arc.
    const std::size_t region = cert.ell_star + ps.L;
    star_ = layout_.chord_arc(cert.star.chord, region - 1, "e*", binary_);
    for (const auto& iv : binary_) {
      if (!layout_.contains(star_, iv)) throw MalformedCertificate("binary arc outside the C* region");
    }

    // Case b base: e_short plus the expanded gadget.
    const std::size_t digits = ps.t, base = ps.b;
    if (cert.gadget.paths.size() != digits * base) throw MalformedCertificate("gadget needs t*b paths");
    gadget_.assign(digits, std::vector<ArcInterval>(base));
    std::size_t total = 0;
    std::vector<std::vector<bool>> have(digits, std::vector<bool>(base, false));
    for (const auto& gp : cert.gadget.paths) {
      const std::string role = "gadget path " + std::to_string(gp.digit) + "," + std::to_string(gp.value);
      if (gp.digit >= digits || gp.value >= base || have[gp.digit][gp.value]) {
        throw MalformedCertificate(role + ": bad index");
      }
      have[gp.digit][gp.value] = true;
      if (gp.path.size() != ps.gadget_path_length(gp.digit, gp.value) + 1) {
        throw MalformedCertificate(role + ": wrong length");
      }
      if (Edge(gp.path.front(), gp.path.back()) != gp.edge) throw MalformedCertificate(role + ": path does not join its edge");
      gadget_[gp.digit][gp.value] = layout_.locate_path(gp.path, role);
      total += gp.path.size() - 1;
    }
    std::vector<ArcInterval> all_gadget;
    for (const auto& digit : gadget_) all_gadget.insert(all_gadget.end(), digit.begin(), digit.end());
    short_ = layout_.chord_arc(cert.gadget.closing, total, "e_short", all_gadget);

    for (const auto& f : cert.long_shortcuts) {
      const std::string role = "long shortcut " + std::to_string(f.index);
      ArcInterval iv = layout_.chord_arc(f.chord, f.ell + 1, role, binary_);
      for (const auto& b : binary_) {
        if (!layout_.contains(iv, b)) throw MalformedCertificate(role + ": arc misses a binary arc");
      }
      longs_.push_back({f.index, f.ell, iv});
    }
    for (const auto& g : cert.singles) {
      if (g.length < 3) throw MalformedCertificate("single shortcut for length < 3");
      singles_[g.length] = layout_.chord_arc(g.chord, g.length - 1, "single " + std::to_string(g.length));
    }
  }

  const CycleLayout& layout() const noexcept { return layout_; }

  DecodedCycle decode(std::size_t ell) const {
    const Certificate& c = *cert_;
    const ParamSet& ps = c.params;
    const std::size_t n = c.n;
    if (ell < 3 || ell > n) throw OutOfRange("length outside [3, n]");
    const std::uint64_t top = ps.singles_top();
    const std::uint64_t L = ps.L;
    DecodedCycle out;

    if (ell <= top) {
      auto it = singles_.find(ell);
      if (it != singles_.end()) {
        out.kind = DecodeCase::Single;
        out.cycle = layout_.compose(it->second, {}, "single");
        return out;
      }
    }
    if (ell >= top + 1 && ell <= top + ps.base_span()) {
      std::uint64_t k = ell - top - 1;
      out.kind = DecodeCase::Base;
      out.k = k;
      std::vector<ArcInterval> drops;
      for (std::uint64_t i = 0; i < ps.t; ++i) {
        const std::uint64_t digit = k % ps.b;
        k /= ps.b;
        for (std::uint64_t j = 0; j < ps.b; ++j) {
          if (j != digit) drops.push_back(gadget_[i][j]);
        }
      }
      out.cycle = layout_.compose(short_, drops, "base window");
      return out;
    }
    if (ell >= c.ell_star && ell <= c.ell_star + L) {
      const std::uint64_t k = ell - c.ell_star;
      out.kind = DecodeCase::Binary;
      out.k = k;
      out.cycle = layout_.compose(star_, binary_drops(~k), "binary window");
      return out;
    }
    for (const auto& w : longs_) {
      if (ell + L >= w.ell + 2 && ell <= w.ell + 2) {
        const std::uint64_t k = w.ell + 2 - ell;
        out.kind = DecodeCase::Long;
        out.window = w.index;
        out.k = k;
        out.cycle = layout_.compose(w.arc, binary_drops(k), "long window");
        return out;
      }
    }
    if (ell + L >= n) {
      const std::uint64_t k = n - ell;
      out.kind = DecodeCase::Top;
      out.k = k;
      out.cycle = layout_.compose(std::nullopt, binary_drops(k), "top window");
      return out;
    }
    throw NoCaseApplies(ell);
  }

 private:
  struct LongArc {
    std::uint64_t index;
    std::uint64_t ell;
    ArcInterval arc;
  };

  // Binary arcs whose bit is set in k (bits 0..K).
  std::vector<ArcInterval> binary_drops(std::uint64_t k) const {
    std::vector<ArcInterval> out;
    for (std::size_t i = 0; i < binary_.size(); ++i) {
      if ((k >> i) & 1) out.push_back(binary_[i]);
    }
    return out;
  }

  const Certificate* cert_;
  CycleLayout layout_;
  std::vector<ArcInterval> binary_;
  ArcInterval star_, short_;
  std::vector<std::vector<ArcInterval>> gadget_;
  std::vector<LongArc> longs_;
  std::map<std::uint64_t, ArcInterval> singles_;
};

inline VertexCycle decode_cycle(const Certificate& cert, std::size_t ell) {
  return Decoder(cert).decode(ell).cycle;
}

struct ShortcutArc {
  std::size_t length = 0;  // edges of the arc matching the chord's role
  std::vector<Vertex> vertices;
  std::string role;
};

// The C_H arc a registered chord is claimed to shortcut.
inline ShortcutArc shortcut_arc(const Certificate& cert, Edge chord) {
  const CycleLayout layout(cert.hamilton);
  std::optional<std::size_t> want;
  std::string role;
  for (const auto& b : cert.binary) {
    if (b.chord == chord) want = b.arc.size() - 1, role = "binary";
  }
  if (!want && cert.star.chord == chord) want = cert.ell_star + cert.params.L - 1, role = "star";
  if (!want && cert.gadget.closing == chord) {
    std::size_t total = 0;
    for (const auto& p : cert.gadget.paths) total += p.path.size() - 1;
    want = total, role = "short";
  }
  for (const auto& p : cert.gadget.paths) {
    if (!want && p.edge == chord) want = p.path.size() - 1, role = "gadget";
  }
  for (const auto& f : cert.long_shortcuts) {
    if (!want && f.chord == chord) want = f.ell + 1, role = "long";
  }
  for (const auto& g : cert.singles) {
    if (!want && g.chord == chord) want = g.length - 1, role = "single";
  }
  if (!want) throw NotAChord("edge " + std::to_string(chord.u) + "-" + std::to_string(chord.v) + " is not a registered chord");
  const ArcInterval iv = layout.chord_arc(chord, *want, role);
  ShortcutArc out;
  out.length = iv.len;
  out.role = role;
  for (std::size_t k = 0; k <= iv.len; ++k) out.vertices.push_back(layout.at(iv.start + k));
  return out;
}

struct LengthVerdict {
  std::size_t length = 0;
  char kind = '-';  // decoding case, '-' when none applied
  std::uint64_t window = 0;
  bool ok = false;
  std::string detail;
};

struct VerificationReport {
  std::size_t n = 0;
  std::vector<LengthVerdict> per_length;  // lengths 3..n in order
  std::size_t edge_count = 0;
  std::uint64_t budget = 0;  // allowed chords beyond n
  bool budget_ok = false;
  bool hamilton_ok = false;
  bool registry_ok = false;
  bool pancyclic = false;
  std::vector<std::string> notes;

  std::vector<std::size_t> failed_lengths() const {
    std::vector<std::size_t> out;
    for (const auto& v : per_length) {
      if (!v.ok) out.push_back(v.length);
    }
    return out;
  }
  bool ok() const { return pancyclic && budget_ok && hamilton_ok && registry_ok; }
};

// Replays one decoded cycle per length. The decode callback returns the
// cycle and its case tag or throws.
template <class DecodeFn>
void verify_lengths(const Graph& h, std::size_t n, DecodeFn&& decode, VerificationReport& r) {
  r.per_length.clear();
  bool all = n >= 3;
  for (std::size_t ell = 3; ell <= n; ++ell) {
    LengthVerdict v;
    v.length = ell;
    try {
      auto [kind, window, cycle] = decode(ell);
      v.kind = kind;
      v.window = window;
      if (cycle.length() != ell) {
        v.detail = "decoded cycle has " + std::to_string(cycle.length()) + " vertices";
      } else if (!check_cycle(h, cycle)) {
        v.detail = "decoded cycle is not a cycle of the graph";
      } else {
        v.ok = true;
      }
    } catch (const Error& e) {
      v.detail = e.what();
    }
    all = all && v.ok;
    r.per_length.push_back(std::move(v));
  }
  r.pancyclic = all;
}

inline VerificationReport verify(const Graph& h5, const Certificate& cert) {
  VerificationReport r;
  r.n = cert.n;
  r.edge_count = h5.edge_count();
  r.budget = edge_budget(cert.params);
  r.budget_ok = h5.edge_count() <= cert.n + r.budget;
  if (h5.vertex_count() != cert.n) {
    r.notes.push_back("graph has " + std::to_string(h5.vertex_count()) + " vertices, certificate " +
                      std::to_string(cert.n));
    r.per_length.clear();
    for (std::size_t ell = 3; ell <= cert.n; ++ell) r.per_length.push_back({ell, '-', 0, false, "vertex count mismatch"});
    return r;
  }
  r.hamilton_ok = cert.hamilton.size() == cert.n && check_cycle(h5, VertexCycle{cert.hamilton});
  if (!r.hamilton_ok) r.notes.push_back("C_H is not a Hamilton cycle of the graph");

  // Every edge must be on C_H or named by the certificate.
  {
    std::set<Edge> known;
    const std::size_t k = cert.hamilton.size();
    for (std::size_t i = 0; i < k; ++i) known.emplace(cert.hamilton[i], cert.hamilton[(i + 1) % k]);
    for (const Edge& e : cert.chords()) known.insert(e);
    r.registry_ok = true;
    for (const Edge& e : h5.edges()) {
      if (!known.contains(e)) {
        r.registry_ok = false;
        r.notes.push_back("unregistered edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        break;
      }
    }
  }

  std::optional<Decoder> dec;
  std::string malformed;
  try {
    dec.emplace(cert);
  } catch (const Error& e) {
    malformed = e.what();
    r.notes.push_back(malformed);
  }
  verify_lengths(h5, cert.n, [&](std::size_t ell) {
    if (!dec) throw MalformedCertificate(malformed);
    DecodedCycle d = dec->decode(ell);
    return std::tuple<char, std::uint64_t, VertexCycle>{static_cast<char>(d.kind), d.window, std::move(d.cycle)};
  }, r);
  return r;
}

// ---- JSON ------------------------------------------------------------------

inline nlohmann::json edge_json(Edge e) { return nlohmann::json::array({e.u, e.v}); }

inline Edge edge_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("edge must be a pair");
  const auto u = j[0].get<Vertex>(), v = j[1].get<Vertex>();
  if (u == v) throw ParseError("edge with equal endpoints");
  return Edge(u, v);
}

inline constexpr int kCertificateVersion = 1;

inline nlohmann::json to_json(const Certificate& c, const std::string& timestamp = "") {
  nlohmann::json j;
  j["format"] = "pancyc-certificate";
  j["version"] = kCertificateVersion;
  j["timestamp"] = timestamp;
  j["n"] = c.n;
  j["params"] = to_json(c.params);
  j["ell_star"] = c.ell_star;
  j["hamilton_cycle"] = c.hamilton;
  j["star_cycle"] = c.star_cycle;
  auto& bin = j["binary"] = nlohmann::json::array();
  for (const auto& b : c.binary) bin.push_back({{"index", b.index}, {"chord", edge_json(b.chord)}, {"arc", b.arc}});
  auto& gad = j["gadget"];
  gad["closing"] = edge_json(c.gadget.closing);
  gad["cycle"] = c.gadget.cycle;
  gad["paths"] = nlohmann::json::array();
  for (const auto& p : c.gadget.paths) {
    gad["paths"].push_back({{"digit", p.digit}, {"value", p.value}, {"edge", edge_json(p.edge)}, {"path", p.path}});
  }
  j["star_link"] = {{"chord", edge_json(c.star.chord)}, {"path", c.star.path}};
  auto& lg = j["long_shortcuts"] = nlohmann::json::array();
  for (const auto& f : c.long_shortcuts) lg.push_back({{"index", f.index}, {"chord", edge_json(f.chord)}, {"ell", f.ell}});
  auto& sg = j["singles"] = nlohmann::json::array();
  for (const auto& g : c.singles) sg.push_back({{"length", g.length}, {"chord", edge_json(g.chord)}});
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "pancyc-certificate") throw ParseError("not a certificate");
    if (j.at("version").get<int>() > kCertificateVersion) throw ParseError("certificate version too new");
    Certificate c;
    c.n = j.at("n").get<std::size_t>();
    c.params = params_from_json(j.at("params"));
    c.ell_star = j.at("ell_star").get<std::uint64_t>();
    c.hamilton = j.at("hamilton_cycle").get<std::vector<Vertex>>();
    c.star_cycle = j.at("star_cycle").get<std::vector<Vertex>>();
    for (const auto& b : j.at("binary")) {
      c.binary.push_back({b.at("index").get<std::uint64_t>(), edge_from_json(b.at("chord")),
                          b.at("arc").get<std::vector<Vertex>>()});
    }
    const auto& g = j.at("gadget");
    c.gadget.closing = edge_from_json(g.at("closing"));
    c.gadget.cycle = g.at("cycle").get<std::vector<Vertex>>();
    for (const auto& p : g.at("paths")) {
      c.gadget.paths.push_back({p.at("digit").get<std::uint64_t>(), p.at("value").get<std::uint64_t>(),
                                edge_from_json(p.at("edge")), p.at("path").get<std::vector<Vertex>>()});
    }
    c.star.chord = edge_from_json(j.at("star_link").at("chord"));
    c.star.path = j.at("star_link").at("path").get<std::vector<Vertex>>();
    for (const auto& f : j.at("long_shortcuts")) {
      c.long_shortcuts.push_back({f.at("index").get<std::uint64_t>(), edge_from_json(f.at("chord")),
                                  f.at("ell").get<std::uint64_t>()});
    }
    for (const auto& s : j.at("singles")) {
      c.singles.push_back({s.at("length").get<std::uint64_t>(), edge_from_json(s.at("chord"))});
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["format"] = "pancyc-report";
  j["version"] = 1;
  j["n"] = r.n;
  j["pancyclic"] = r.pancyclic;
  j["edge_count"] = r.edge_count;
  j["budget"] = r.budget;
  j["budget_ok"] = r.budget_ok;
  j["hamilton_ok"] = r.hamilton_ok;
  j["registry_ok"] = r.registry_ok;
  j["notes"] = r.notes;
  auto& ls = j["lengths"] = nlohmann::json::array();
  for (const auto& v : r.per_length) {
    nlohmann::json e = {{"length", v.length}, {"case", std::string(1, v.kind)}, {"ok", v.ok}};
    if (v.kind == 'd') e["window"] = v.window;
    if (!v.detail.empty()) e["detail"] = v.detail;
    ls.push_back(std::move(e));
  }
  return j;
}

}  // namespace pancyc
