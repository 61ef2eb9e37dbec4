// Copyright 2026 The flatcert Authors.
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

// Instance files: JSON load/save with schema errors that carry a JSON
// pointer to the offending value. Array indices inside instances are
// 0-based; partitions are strings like "1|2,3" with 1-based members.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcert/caps.hpp"
#include "flatcert/geometry.hpp"
#include "flatcert/measure.hpp"
#include "flatcert/shapes.hpp"
#include "json.hpp"

namespace flatcert::cli {

using json = nlohmann::json;

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

struct Options {
  double tol = 1e-6;
  double grid_res = 0.0;  // 0: per-task default
  std::uint64_t seed = 0;
  int k = 1;
  std::string partition;
  std::vector<double> alpha;
  double norm_p = 2.0;

  bool operator==(const Options&) const = default;
};

struct CoverSet {
  CapUnion set;
  std::vector<int> colors;  // empty unless the set is antipodally invariant
};

struct MatchingData {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> edges;  // (v, w)
  std::vector<int> quotas;

  std::vector<std::vector<bool>> adjacency() const {
    std::vector<std::vector<bool>> adj(left, std::vector<bool>(right, false));
    for (auto [v, w] : edges) adj[v][w] = true;
    return adj;
  }
};

struct Instance {
  std::string task;
  int dimension = 0;
  std::vector<CompactSet> sets;
  std::vector<std::vector<CompactSet>> families;
  std::vector<MeasureWithDeviation> measures;
  std::optional<Mat> points;                 // columns
  std::vector<Vec> pair;                     // two points for antipodal-pair checks
  std::vector<Segment> segments_a;           // equalized checks
  std::vector<Segment> segments_b;
  std::vector<CoverSet> cover;
  std::optional<MatchingData> matching;
  Options options;
};

namespace detail {

inline std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string at(const std::string& base, size_t i) { return base + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(ptr, "missing required field '" + key + "'");
  return j.at(key);
}

inline double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(ptr, "expected a finite number");
  return x;
}

inline int integer(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  return j.get<int>();
}

inline const json& array(const json& j, const std::string& ptr, size_t min_size = 0) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array");
  if (j.size() < min_size) throw SchemaError(ptr, "expected at least " + std::to_string(min_size) + " entries");
  return j;
}

inline Vec vector(const json& j, const std::string& ptr, int dim) {
  array(j, ptr, 1);
  if (dim > 0 && static_cast<int>(j.size()) != dim) {
    throw SchemaError(ptr, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], at(ptr, i));
  return v;
}

inline Mat columns(const json& j, const std::string& ptr, int dim) {
  array(j, ptr, 1);
  Mat m(dim, static_cast<Eigen::Index>(j.size()));
  for (size_t c = 0; c < j.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = vector(j[c], at(ptr, c), dim);
  return m;
}

inline json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline json columns_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(Vec(m.col(c))));
  return out;
}

inline CompactSet compact_set(const json& j, const std::string& ptr, int dim) {
  if (!j.is_object()) throw SchemaError(ptr, "expected a set object");
  try {
    if (j.contains("points")) return CompactSet({columns(j["points"], at(ptr, "points"), dim)});
    if (j.contains("pieces")) {
      const json& ps = array(j["pieces"], at(ptr, "pieces"), 1);
      std::vector<Piece> pieces;
      for (size_t i = 0; i < ps.size(); ++i) pieces.push_back(columns(ps[i], at(at(ptr, "pieces"), i), dim));
      return CompactSet(std::move(pieces));
    }
    if (j.contains("disc")) {
      const std::string p = at(ptr, "disc");
      if (dim != 2) throw SchemaError(p, "discs need dimension 2");
      const json& d = j["disc"];
      const int m = d.contains("vertices") ? integer(d["vertices"], at(p, "vertices")) : 64;
      if (m < 3) throw SchemaError(at(p, "vertices"), "need at least 3 vertices");
      const double r = number(field(d, "radius", p), at(p, "radius"));
      if (!(r > 0)) throw SchemaError(at(p, "radius"), "radius must be positive");
      return shapes::disc(vector(field(d, "center", p), at(p, "center"), 2), r, m);
    }
    if (j.contains("ball")) {
      const std::string p = at(ptr, "ball");
      if (dim != 3) throw SchemaError(p, "balls need dimension 3");
      const json& d = j["ball"];
      const double r = number(field(d, "radius", p), at(p, "radius"));
      if (!(r > 0)) throw SchemaError(at(p, "radius"), "radius must be positive");
      return shapes::ball(vector(field(d, "center", p), at(p, "center"), 3), r);
    }
    if (j.contains("box")) {
      const std::string p = at(ptr, "box");
      const json& d = j["box"];
      const Vec lo = vector(field(d, "lo", p), at(p, "lo"), dim);
      const Vec hi = vector(field(d, "hi", p), at(p, "hi"), dim);
      if ((hi.array() < lo.array()).any()) throw SchemaError(p, "box needs lo <= hi");
      return CompactSet({shapes::box(lo, hi)});
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(ptr, e.what());
  }
  throw SchemaError(ptr, "set needs one of 'points', 'pieces', 'disc', 'ball', 'box'");
}

inline json set_json(const CompactSet& s) {
  if (s.pieces().size() == 1) return json{{"points", columns_json(s.pieces().front())}};
  json ps = json::array();
  for (const auto& p : s.pieces()) ps.push_back(columns_json(p));
  return json{{"pieces", ps}};
}

inline std::vector<CompactSet> set_list(const json& j, const std::string& ptr, int dim) {
  array(j, ptr, 1);
  std::vector<CompactSet> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(compact_set(j[i], at(ptr, i), dim));
  return out;
}

inline json set_list_json(const std::vector<CompactSet>& sets) {
  json out = json::array();
  for (const auto& s : sets) out.push_back(set_json(s));
  return out;
}

inline MeasureWithDeviation measure(const json& j, const std::string& ptr, int dim) {
  const Mat atoms = columns(field(j, "atoms", ptr), at(ptr, "atoms"), dim);
  const double eps = j.contains("eps") ? number(j["eps"], at(ptr, "eps")) : 0.0;
  Vec w = Vec::Constant(atoms.cols(), 1.0 / static_cast<double>(atoms.cols()));
  if (j.contains("weights")) {
    w = vector(j["weights"], at(ptr, "weights"), static_cast<int>(atoms.cols()));
  }
  try {
    return MeasureWithDeviation(atoms, w, eps);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(ptr, e.what());
  }
}

inline CoverSet cover_set(const json& j, const std::string& ptr, int ambient) {
  const json& caps = array(field(j, "caps", ptr), at(ptr, "caps"), 1);
  std::vector<Cap> out;
  for (size_t i = 0; i < caps.size(); ++i) {
    const std::string p = at(at(ptr, "caps"), i);
    Vec c = vector(field(caps[i], "center", p), at(p, "center"), ambient);
    if (std::abs(c.norm() - 1.0) > 1e-6) throw SchemaError(at(p, "center"), "cap centers must be unit vectors");
    c.normalize();
    double r = 0.0;
    if (caps[i].contains("radius")) {
      r = number(caps[i]["radius"], at(p, "radius"));
    } else {
      r = number(field(caps[i], "radius_deg", p), at(p, "radius_deg")) * kPi / 180.0;
    }
    if (!(r > 0 && r < kPi)) throw SchemaError(p, "cap radius must lie in (0, pi)");
    out.push_back({c, r});
  }
  CoverSet s{CapUnion(std::move(out)), {}};
  if (j.contains("colors")) {
    const json& cs = array(j["colors"], at(ptr, "colors"), caps.size());
    if (cs.size() != caps.size()) throw SchemaError(at(ptr, "colors"), "need one color per cap");
    for (size_t i = 0; i < cs.size(); ++i) s.colors.push_back(integer(cs[i], at(at(ptr, "colors"), i)));
  }
  return s;
}

inline Options options(const json& j, const std::string& ptr) {
  Options o;
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  for (const auto& [key, val] : j.items()) {
    const std::string p = at(ptr, key);
    if (key == "tol") {
      o.tol = number(val, p);
      if (!(o.tol > 0)) throw SchemaError(p, "tol must be positive");
    } else if (key == "grid_res") {
      o.grid_res = number(val, p);
      if (o.grid_res < 0) throw SchemaError(p, "grid_res must be nonnegative");
    } else if (key == "seed") {
      if (!val.is_number_unsigned() && !(val.is_number_integer() && val.get<long long>() >= 0)) {
        throw SchemaError(p, "seed must be a nonnegative integer");
      }
      o.seed = val.get<std::uint64_t>();
    } else if (key == "k") {
      o.k = integer(val, p);
    } else if (key == "partition") {
      if (!val.is_string()) throw SchemaError(p, "expected a string like \"1|2,3\"");
      o.partition = val.get<std::string>();
    } else if (key == "alpha") {
      array(val, p);
      for (size_t i = 0; i < val.size(); ++i) o.alpha.push_back(number(val[i], at(p, i)));
    } else if (key == "norm_p") {
      o.norm_p = number(val, p);
    } else {
      throw SchemaError(p, "unknown option");
    }
  }
  return o;
}

inline std::vector<Segment> segments(const json& j, const std::string& ptr) {
  array(j, ptr, 1);
  std::vector<Segment> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const Vec s = vector(j[i], at(ptr, i), 2);
    if (s(0) > s(1)) throw SchemaError(at(ptr, i), "segment needs lo <= hi");
    out.push_back({s(0), s(1)});
  }
  return out;
}

}  // namespace detail

inline Instance load_instance(const json& j) {
  using namespace detail;
  if (!j.is_object()) throw SchemaError("", "instance must be a JSON object");
  static const std::vector<std::string> known = {"task",     "dimension", "sets",  "families", "measures", "points",
                                                 "pair",     "segments",  "cover", "matching", "options"};
  for (const auto& [key, val] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw SchemaError("/" + key, "unknown field");
  }
  Instance in;
  if (j.contains("task")) {
    if (!j["task"].is_string()) throw SchemaError("/task", "expected a string");
    in.task = j["task"].get<std::string>();
  }
  in.dimension = integer(field(j, "dimension", ""), "/dimension");
  if (in.dimension < 1 || in.dimension > 3) throw SchemaError("/dimension", "dimension must be 1, 2 or 3");
  const int d = in.dimension;
  if (j.contains("sets")) in.sets = set_list(j["sets"], "/sets", d);
  if (j.contains("families")) {
    const json& fs = array(j["families"], "/families", 1);
    for (size_t f = 0; f < fs.size(); ++f) in.families.push_back(set_list(fs[f], at("/families", f), d));
  }
  if (j.contains("measures")) {
    const json& ms = array(j["measures"], "/measures", 1);
    for (size_t i = 0; i < ms.size(); ++i) in.measures.push_back(measure(ms[i], at("/measures", i), d));
  }
  if (j.contains("points")) in.points = columns(j["points"], "/points", d);
  if (j.contains("pair")) {
    const json& p = array(j["pair"], "/pair", 2);
    if (p.size() != 2) throw SchemaError("/pair", "expected exactly two points");
    in.pair = {vector(p[0], "/pair/0", d), vector(p[1], "/pair/1", d)};
  }
  if (j.contains("segments")) {
    in.segments_a = segments(field(j["segments"], "a", "/segments"), "/segments/a");
    in.segments_b = segments(field(j["segments"], "b", "/segments"), "/segments/b");
    if (in.segments_a.size() != in.segments_b.size()) throw SchemaError("/segments", "a and b need equal length");
  }
  if (j.contains("cover")) {
    const json& cs = array(j["cover"], "/cover", 1);
    for (size_t i = 0; i < cs.size(); ++i) in.cover.push_back(cover_set(cs[i], at("/cover", i), d));
  }
  if (j.contains("matching")) {
    const json& m = j["matching"];
    MatchingData md;
    md.left = integer(field(m, "left", "/matching"), "/matching/left");
    md.right = integer(field(m, "right", "/matching"), "/matching/right");
    if (md.left < 1 || md.right < 0) throw SchemaError("/matching", "need at least one left vertex");
    const json& es = array(field(m, "edges", "/matching"), "/matching/edges");
    for (size_t i = 0; i < es.size(); ++i) {
      const std::string p = at("/matching/edges", i);
      array(es[i], p, 2);
      const int v = integer(es[i][0], at(p, 0));
      const int w = integer(es[i][1], at(p, 1));
      if (v < 0 || v >= md.left || w < 0 || w >= md.right) throw SchemaError(p, "edge endpoint out of range");
      md.edges.emplace_back(v, w);
    }
    const json& qs = array(field(m, "quotas", "/matching"), "/matching/quotas");
    if (static_cast<int>(qs.size()) != md.left) throw SchemaError("/matching/quotas", "need one quota per left vertex");
    for (size_t i = 0; i < qs.size(); ++i) md.quotas.push_back(integer(qs[i], at("/matching/quotas", i)));
    in.matching = md;
  }
  if (j.contains("options")) in.options = options(j["options"], "/options");
  return in;
}

inline json save_instance(const Instance& in) {
  using namespace detail;
  json j;
  if (!in.task.empty()) j["task"] = in.task;
  j["dimension"] = in.dimension;
  if (!in.sets.empty()) j["sets"] = set_list_json(in.sets);
  if (!in.families.empty()) {
    j["families"] = json::array();
    for (const auto& f : in.families) j["families"].push_back(set_list_json(f));
  }
  if (!in.measures.empty()) {
    j["measures"] = json::array();
    for (const auto& m : in.measures) {
      j["measures"].push_back({{"atoms", columns_json(m.points())}, {"weights", to_json(m.weights())}, {"eps", m.eps()}});
    }
  }
  if (in.points) j["points"] = columns_json(*in.points);
  if (!in.pair.empty()) j["pair"] = {to_json(in.pair[0]), to_json(in.pair[1])};
  if (!in.segments_a.empty()) {
    json a = json::array();
    json b = json::array();
    for (const auto& s : in.segments_a) a.push_back({s.lo, s.hi});
    for (const auto& s : in.segments_b) b.push_back({s.lo, s.hi});
    j["segments"] = {{"a", a}, {"b", b}};
  }
  if (!in.cover.empty()) {
    j["cover"] = json::array();
    for (const auto& s : in.cover) {
      json caps = json::array();
      for (const auto& c : s.set.caps()) caps.push_back({{"center", to_json(c.center)}, {"radius", c.radius}});
      json e = {{"caps", caps}};
      if (!s.colors.empty()) e["colors"] = s.colors;
      j["cover"].push_back(e);
    }
  }
  if (in.matching) {
    json es = json::array();
    for (auto [v, w] : in.matching->edges) es.push_back({v, w});
    j["matching"] = {{"left", in.matching->left}, {"right", in.matching->right}, {"edges", es},
                     {"quotas", in.matching->quotas}};
  }
  const Options& o = in.options;
  json opts = {{"tol", o.tol}, {"seed", o.seed}, {"k", o.k}};
  if (o.grid_res > 0) opts["grid_res"] = o.grid_res;
  if (!o.partition.empty()) opts["partition"] = o.partition;
  if (!o.alpha.empty()) opts["alpha"] = o.alpha;
  if (o.norm_p != 2.0) opts["norm_p"] = o.norm_p;
  j["options"] = opts;
  return j;
}

inline json parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
}

inline Instance read_instance(const std::string& path) { return load_instance(parse_file(path)); }

/// Writes via a temporary file in the same directory and a rename.
inline void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace flatcert::cli
