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

// Task dispatch for the command-line tool. Every solver result is turned
// into a JSON object, and certified verdicts are stamped only after that
// object has been rechecked against the instance by recheck().

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "flatcert/flatcert.hpp"
#include "flatcert/oracles.hpp"
#include "instance_io.hpp"

namespace flatcert::cli {

struct Certificate {
  std::string task;
  Verdict verdict = Verdict::kResolutionFailure;
  std::string message;
  json object;  // null unless something was found
  double residual = 0.0;
  json residuals = json::object();
  double tol = 0.0;
  std::string digest;
  double millis = 0.0;

  json to_json() const {
    json j = {{"task", task},       {"verdict", to_string(verdict)}, {"exit_code", exit_code(verdict)},
              {"tol", tol},         {"instance_digest", digest},     {"timing_ms", millis},
              {"residuals", residuals}};
    if (!message.empty()) j["message"] = message;
    if (!object.is_null()) j["object"] = object;
    if (std::isfinite(residual)) j["residual"] = residual;
    return j;
  }
};

struct Recheck {
  bool holds = false;
  double residual = 0.0;
  json residuals = json::object();
};

namespace detail {

inline std::string instance_digest(const Instance& in) { return fnv1a_hex(save_instance(in).dump()); }

inline Partition partition_of(const Instance& in, int count) {
  std::string text = in.options.partition;
  if (text.empty()) {
    text = "1|";
    for (int i = 2; i <= count; ++i) text += (i > 2 ? "," : "") + std::to_string(i);
  }
  try {
    return Partition::parse(text, count);
  } catch (const std::exception& e) {
    throw SchemaError("/options/partition", e.what());
  }
}

inline json hyperplane_json(const OrientedHyperplane& h) { return {{"normal", to_json(h.normal)}, {"offset", h.offset}}; }

inline OrientedHyperplane hyperplane_from(const json& j, int n) {
  return OrientedHyperplane::make(vector(field(j, "normal", "/object/hyperplane"), "/object/hyperplane/normal", n),
                                  number(field(j, "offset", "/object/hyperplane"), "/object/hyperplane/offset"));
}

inline json flat_json(const Flat& f) { return {{"basis", columns_json(f.basis)}, {"base", to_json(f.base)}}; }

inline Flat flat_from(const json& j, int n) {
  const Vec base = vector(field(j, "base", "/object/flat"), "/object/flat/base", n);
  const json& b = field(j, "basis", "/object/flat");
  Mat basis(n, static_cast<Eigen::Index>(b.size()));
  for (size_t c = 0; c < b.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = vector(b[c], "/object/flat/basis", n);
  return Flat::through(base, basis);
}

inline std::vector<int> ints(const json& j) { return j.get<std::vector<int>>(); }

inline std::vector<CapUnion> caps_of(const Instance& in) {
  std::vector<CapUnion> out;
  for (const auto& c : in.cover) out.push_back(c.set);
  return out;
}

inline void require(bool ok, const std::string& ptr, const std::string& what) {
  if (!ok) throw SchemaError(ptr, what);
}

inline DirectionGrid direction_grid(const Instance& in, int n) {
  if (in.options.grid_res > 0) return make_grid(n, 1, in.options.grid_res, in.options.seed);
  return default_direction_grid(n, in.options.seed);
}

inline DirectionGrid sphere_grid(const Instance& in, int ambient, int k = 1) {
  if (in.options.grid_res > 0) return make_grid(ambient, k, in.options.grid_res, in.options.seed);
  if (ambient == 2) return make_grid(2, k, 2.0 * kPi / 720.0, in.options.seed);
  return make_grid(ambient, k, k == 1 ? 0.08 : 0.4, in.options.seed);
}

inline Norm norm_of(const Instance& in) {
  try {
    return in.options.norm_p == 2.0 ? Norm::euclidean() : Norm::p_norm(in.options.norm_p);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/options/norm_p", e.what());
  }
}

inline std::vector<int> side_of(const Partition& p, int count) {
  std::vector<int> side(count, 0);
  for (int i : p.i2) side[i] = 1;
  return side;
}

inline std::vector<double> sandwich_alpha(const Instance& in, bool half) {
  if (half) return std::vector<double>(in.measures.size(), 0.5);
  if (!in.options.alpha.empty()) return in.options.alpha;
  std::vector<double> a;
  for (const auto& m : in.measures) a.push_back(m.eps());
  return a;
}

inline Recheck from_residual(double residual, double tol, bool at_most = true) {
  Recheck r;
  r.residual = residual;
  r.holds = at_most ? residual <= tol : residual >= tol;
  return r;
}

template <class T>
struct Found {
  Outcome<T> outcome;
  std::function<json(const T&)> encode;
};

}  // namespace detail

/// Independent recheck of a certificate object against the instance.
inline Recheck recheck(const std::string& task, const Instance& in, const json& obj) {
  using namespace detail;
  const double tol = in.options.tol;
  const int n = in.dimension;
  if (task == "transversal-hyperplane" || task == "families-alternative") {
    const OrientedHyperplane h = hyperplane_from(field(obj, "hyperplane", "/object"), n);
    std::vector<CompactSet> sets = in.sets;
    if (task == "families-alternative") {
      sets.clear();
      if (obj.value("branch", "") == "separation") {
        const auto reps = ints(field(obj, "representatives", "/object"));
        for (size_t f = 0; f < in.families.size(); ++f) sets.push_back(in.families[f].at(reps.at(f)));
      } else {
        for (const auto& fam : in.families) sets.insert(sets.end(), fam.begin(), fam.end());
      }
    }
    if (obj.value("branch", "") == "transversal") {
      const auto c = certify_transversal(sets, h);
      Recheck r = from_residual(c.residual, tol);
      r.residuals["distances"] = c.distances;
      return r;
    }
    const double gap = separation_gap(sets, h, ints(obj.at("i1")), ints(obj.at("i2")));
    Recheck r = from_residual(std::max(0.0, -gap), tol);
    r.residuals["gap"] = gap;
    return r;
  }
  if (task == "equidistant-flat" || task == "common-transversal" || task == "equal-deviation") {
    const Flat f = flat_from(field(obj, "flat", "/object"), n);
    const auto metric = task == "equal-deviation" ? FlatMetric::kDeviation : FlatMetric::kDistance;
    const auto c = flatcert::detail::certify_flat(in.sets, f, norm_of(in), metric);
    Recheck r = from_residual(task == "common-transversal" ? c.residual : c.spread, tol);
    r.residuals = {{"values", c.values}, {"spread", c.spread}, {"max", c.residual}};
    return r;
  }
  if (task == "sections") {
    const Vec u = vector(field(obj, "u", "/object"), "/object/u", n).normalized();
    const auto c = sections_at(*in.points, u, in.options.k, tol);
    Recheck r;
    r.residual = c.residual;
    r.holds = static_cast<int>(c.touching().size()) >= n + 1 && c.top - c.bottom > tol;
    r.residuals = {{"touching", c.touching()}, {"width", c.top - c.bottom}};
    return r;
  }
  if (task == "halfsphere" || task == "halfsphere-alternative") {
    const auto sets = caps_of(in);
    const json& b = field(obj, "basis", "/object");
    Mat basis(n, static_cast<Eigen::Index>(b.size()));
    for (size_t c = 0; c < b.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = vector(b[c], "/object/basis", n);
    const HalfSphere h{orthonormalize(basis)};
    if (obj.value("branch", "") == "meets") {
      const auto c = certify_halfsphere(sets, h);
      Recheck r = from_residual(c.margin, tol, false);
      r.residuals["margin"] = c.margin;
      return r;
    }
    const auto c = certify_complementary(sets, h, partition_of(in, static_cast<int>(sets.size())));
    Recheck r = from_residual(std::max(0.0, -c.margin), tol);
    r.residuals = {{"clearances", c.clearances}, {"margin", c.margin}};
    return r;
  }
  if (task == "colored") {
    Recheck r;
    const auto holding = ints(field(obj, "holding", "/object"));
    for (int alt : holding) {
      if (alt == 1) {
        const auto tuple = ints(obj.at("tuple"));
        std::vector<Piece> hulls;
        for (size_t f = 0; f < in.families.size(); ++f) hulls.push_back(in.families[f].at(tuple.at(f)).vertices());
        const bool empty = !common_point(hulls, kGeoTol).nonempty;
        r.residuals["tuple_empty"] = empty;
        r.holds = r.holds || empty;
      } else if (alt == 3) {
        Mat d(n, static_cast<Eigen::Index>(obj.at("direction").size()));
        for (size_t c = 0; c < obj.at("direction").size(); ++c) {
          d.col(static_cast<Eigen::Index>(c)) = vector(obj.at("direction")[c], "/object/direction", n);
        }
        d = orthonormalize(d);
        const Mat proj = Mat::Identity(n, n) - d * d.transpose();
        bool all = true;
        for (const auto& fam : in.families) {
          std::vector<Piece> hulls;
          for (const auto& s : fam) hulls.push_back(proj * s.vertices());
          all = all && common_point(hulls, kGeoTol).nonempty;
        }
        r.residuals["parallel"] = all;
        r.holds = r.holds || all;
      } else if (alt == 2) {
        r.residuals["good_family"] = obj.at("good_family");
        r.holds = true;
      }
    }
    return r;
  }
  if (task == "measure-alternative") {
    const OrientedHyperplane h = hyperplane_from(field(obj, "hyperplane", "/object"), n);
    Recheck r;
    if (obj.value("branch", "") == "cut") {
      r.holds = true;
      for (const auto& m : in.measures) r.holds = r.holds && reliably_intersects(h, m, tol);
      r.residuals["masses"] = negative_masses(in.measures, h);
      return r;
    }
    std::vector<MeasureWithDeviation> a;
    std::vector<MeasureWithDeviation> b;
    for (int i : ints(obj.at("i1"))) a.push_back(in.measures.at(i));
    for (int i : ints(obj.at("i2"))) b.push_back(in.measures.at(i));
    r.holds = almost_separates(h, a, b);
    r.residuals["masses"] = negative_masses(in.measures, h);
    return r;
  }
  if (task == "sandwich" || task == "ham-sandwich") {
    const OrientedHyperplane h = hyperplane_from(field(obj, "hyperplane", "/object"), n);
    const auto alpha = sandwich_alpha(in, task == "ham-sandwich");
    const auto masses = negative_masses(in.measures, h);
    double worst = 0.0;
    for (size_t i = 0; i < masses.size(); ++i) worst = std::max(worst, std::abs(masses[i] - alpha.at(i)));
    Recheck r = from_residual(worst, tol);
    r.residuals = {{"masses", masses}, {"alpha", alpha}};
    return r;
  }
  if (task == "partition-point") {
    const auto sets = caps_of(in);
    const auto p = certify_partition_point(sets, side_of(partition_of(in, static_cast<int>(sets.size())), static_cast<int>(sets.size())),
                                           vector(field(obj, "x", "/object"), "/object/x", n));
    Recheck r = from_residual(p.residual, std::max(tol, 1e-3));
    r.residuals = {{"first", p.first_distances}, {"second", p.second_distances}};
    return r;
  }
  if (task == "deep-point" || task == "ls") {
    const auto sets = caps_of(in);
    const Vec x = vector(field(obj, "x", "/object"), "/object/x", n).normalized();
    const int need = task == "deep-point" ? n + 1 : n;
    const double ctol = std::max(tol, 1e-3);
    Recheck r;
    std::vector<double> d;
    int count = 0;
    for (const auto& s : sets) {
      d.push_back(task == "deep-point" ? std::min(s.distance(x), s.distance(-x)) : s.distance(x));
      count += d.back() <= ctol;
    }
    r.holds = count >= need;
    std::vector<double> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    r.residual = sorted.at(need - 1);
    r.residuals = {{"distances", d}, {"count", count}};
    return r;
  }
  if (task == "hall") {
    const auto adj = in.matching->adjacency();
    Recheck r;
    if (obj.contains("tau")) {
      r.holds = is_quota_matching(adj, in.matching->quotas, ints(obj["tau"]));
    } else {
      const auto d = ints(field(obj, "deficient", "/object"));
      r.holds = is_deficient(adj, in.matching->quotas, d);
      r.residuals["neighborhood"] = neighborhood_size(adj, d);
    }
    return r;
  }
  throw SchemaError("/task", "unknown task '" + task + "'");
}

namespace detail {

template <class T>
Certificate finish(const std::string& task, const Instance& in, const Outcome<T>& out,
                   const std::function<json(const T&)>& encode) {
  Certificate c;
  c.task = task;
  c.tol = in.options.tol;
  c.verdict = out.verdict;
  c.message = out.message;
  c.residual = out.best_residual;
  if (out.value) c.object = encode(*out.value);
  if (out.certified()) {
    const Recheck r = recheck(task, in, c.object);
    c.residuals = r.residuals;
    c.residual = r.residual;
    if (!r.holds) {
      c.verdict = Verdict::kResolutionFailure;
      c.message = "solver output failed the independent recheck";
    }
  }
  return c;
}

inline json alternative_json(const AlternativeCertificate& a) {
  if (const auto* t = std::get_if<TransversalCertificate>(&a)) {
    return {{"branch", "transversal"}, {"hyperplane", hyperplane_json(*t->hyperplane)}, {"nested", t->nested}};
  }
  const auto& s = std::get<SeparationCertificate>(a);
  json j = {{"branch", "separation"}, {"hyperplane", hyperplane_json(s.hyperplane)}, {"i1", s.i1}, {"i2", s.i2}};
  if (!s.representatives.empty()) j["representatives"] = s.representatives;
  return j;
}

inline FlatSearchOptions flat_options(const Instance& in) {
  FlatSearchOptions o;
  o.tol = in.options.tol;
  o.resolution = in.options.grid_res;
  o.seed = in.options.seed;
  return o;
}

inline json flat_cert_json(const FlatCertificate& c) {
  return {{"flat", flat_json(c.flat)}, {"values", c.values}, {"spread", c.spread}};
}

inline json halfsphere_json(const HalfSphereCertificate& c) {
  json w = json::array();
  for (const auto& v : c.witnesses) w.push_back(to_json(v));
  return {{"branch", "meets"}, {"basis", columns_json(c.halfsphere.basis)}, {"witnesses", w}, {"margin", c.margin}};
}

inline json cut_json(const MeasureCutCertificate& c) {
  return {{"hyperplane", hyperplane_json(c.hyperplane)}, {"masses", c.masses}};
}

inline json incidence_json(const IncidencePoint& p) {
  return {{"x", to_json(p.x)}, {"sets", p.sets}, {"count", p.count}};
}

}  // namespace detail

inline const std::vector<std::string>& solve_tasks() {
  static const std::vector<std::string> t = {"transversal-hyperplane", "families-alternative", "equidistant-flat",
                                             "common-transversal",     "equal-deviation",      "sections",
                                             "halfsphere",             "halfsphere-alternative", "colored",
                                             "measure-alternative",    "sandwich",             "ham-sandwich"};
  return t;
}

inline const std::vector<std::string>& lab_tasks() {
  static const std::vector<std::string> t = {"partition-point", "deep-point", "ls", "hall"};
  return t;
}

/// Runs a solver task and returns its certificate.
inline Certificate run_task(const std::string& task, const Instance& in) {
  using namespace detail;
  const auto start = std::chrono::steady_clock::now();
  const double tol = in.options.tol;
  const int n = in.dimension;
  Certificate c;
  auto need_sets = [&] { require(!in.sets.empty(), "/sets", "task '" + task + "' needs 'sets'"); };
  auto need_families = [&] { require(!in.families.empty(), "/families", "task '" + task + "' needs 'families'"); };
  auto need_measures = [&] { require(!in.measures.empty(), "/measures", "task '" + task + "' needs 'measures'"); };
  auto need_cover = [&] { require(!in.cover.empty(), "/cover", "task '" + task + "' needs 'cover'"); };

  if (task == "transversal-hyperplane") {
    need_sets();
    const auto out = hyperplane_alternative(in.sets, partition_of(in, static_cast<int>(in.sets.size())),
                                            direction_grid(in, n), tol);
    c = finish<AlternativeCertificate>(task, in, out, alternative_json);
  } else if (task == "families-alternative") {
    need_families();
    const auto out = pairwise_families_alternative(in.families, partition_of(in, static_cast<int>(in.families.size())),
                                                   direction_grid(in, n), tol);
    c = finish<AlternativeCertificate>(task, in, out, alternative_json);
  } else if (task == "equidistant-flat" || task == "common-transversal" || task == "equal-deviation") {
    need_sets();
    const auto opt = flat_options(in);
    const auto out = task == "equidistant-flat"     ? equidistant_k_flat(in.sets, in.options.k, norm_of(in), opt)
                     : task == "common-transversal" ? common_k_transversal(in.sets, in.options.k, norm_of(in), opt)
                                                    : equal_deviation_k_flat(in.sets, in.options.k, norm_of(in), opt);
    c = finish<FlatCertificate>(task, in, out, flat_cert_json);
  } else if (task == "sections") {
    require(in.points.has_value(), "/points", "task 'sections' needs 'points'");
    const auto grid = in.options.grid_res > 0 ? make_grid(n, 1, in.options.grid_res, in.options.seed)
                                              : make_grid(n, 1, n == 2 ? 2.0 * kPi / 256.0 : 0.08, in.options.seed);
    const auto out = polytope_sections_config(*in.points, in.options.k, grid, tol);
    c = finish<SectionsConfiguration>(task, in, out, [](const SectionsConfiguration& s) {
      return json{{"u", to_json(s.u)}, {"subspace", columns_json(s.subspace)}, {"upper", s.upper}, {"lower", s.lower}};
    });
  } else if (task == "halfsphere" || task == "halfsphere-alternative") {
    need_cover();
    HalfSphereOptions opt;
    opt.tol = tol;
    const auto grid = sphere_grid(in, n, in.options.k);
    const auto sets = caps_of(in);
    if (task == "halfsphere") {
      c = finish<HalfSphereCertificate>(task, in, halfsphere_piercing(sets, in.options.k, grid, opt), halfsphere_json);
    } else {
      const auto out = complementary_halfsphere_alternative(sets, in.options.k,
                                                            partition_of(in, static_cast<int>(sets.size())), grid, opt);
      c = finish<HalfSphereResult>(task, in, out, [](const HalfSphereResult& r) {
        if (const auto* m = std::get_if<HalfSphereCertificate>(&r)) return halfsphere_json(*m);
        const auto& s = std::get<ComplementaryCertificate>(r);
        return json{{"branch", "avoids"}, {"basis", columns_json(s.h1.basis)}, {"clearances", s.clearances}};
      });
    }
  } else if (task == "colored") {
    need_families();
    ColoredOptions opt;
    opt.resolution = in.options.grid_res;
    opt.seed = in.options.seed;
    c = finish<ColoredReport>(task, in, colored_transversal_check(in.families, in.options.k, opt),
                              [](const ColoredReport& r) {
                                json j = {{"variant", r.variant == ColoredVariant::kTwoFamilies ? "two-families"
                                                                                                : "parallel-flats"},
                                          {"holding", r.holding()},
                                          {"tuples_checked", r.tuples_checked},
                                          {"family_ok", r.family_ok},
                                          {"good_family", r.good_family}};
                                if (r.empty_tuple) j["tuple"] = r.tuple;
                                if (r.parallel) j["direction"] = columns_json(r.direction);
                                if (!r.note.empty()) j["note"] = r.note;
                                return j;
                              });
  } else if (task == "measure-alternative") {
    need_measures();
    const auto out = measure_alternative(in.measures, partition_of(in, static_cast<int>(in.measures.size())),
                                         direction_grid(in, n), tol);
    c = finish<MeasureAlternative>(task, in, out, [](const MeasureAlternative& a) {
      if (const auto* cut = std::get_if<MeasureCutCertificate>(&a)) {
        json j = cut_json(*cut);
        j["branch"] = "cut";
        return j;
      }
      const auto& s = std::get<AlmostSeparationCertificate>(a);
      return json{{"branch", "separation"}, {"hyperplane", hyperplane_json(s.hyperplane)},
                  {"i1", s.i1},             {"i2", s.i2},
                  {"masses", s.masses}};
    });
  } else if (task == "sandwich" || task == "ham-sandwich") {
    need_measures();
    SandwichOptions opt;
    opt.tol = tol;
    const auto grid = direction_grid(in, n);
    const auto out = task == "ham-sandwich" ? ham_sandwich(in.measures, grid, opt)
                                            : generalized_ham_sandwich(in.measures, sandwich_alpha(in, false), grid, opt);
    c = finish<MeasureCutCertificate>(task, in, out, cut_json);
  } else if (task == "partition-point") {
    need_cover();
    CoveringOptions opt;
    opt.tol = std::max(tol, 1e-3);
    const auto sets = caps_of(in);
    const auto side = side_of(partition_of(in, static_cast<int>(sets.size())), static_cast<int>(sets.size()));
    c = finish<PartitionPoint>(task, in, find_partition_point(sets, side, sphere_grid(in, n), opt),
                               [](const PartitionPoint& p) {
                                 return json{{"x", to_json(p.x)}, {"eps", p.eps}, {"map_error", p.map_error}};
                               });
  } else if (task == "deep-point") {
    need_cover();
    CoveringOptions opt;
    opt.tol = std::max(tol, 1e-3);
    c = finish<IncidencePoint>(task, in, find_deep_point(caps_of(in), sphere_grid(in, n), opt), incidence_json);
  } else if (task == "ls") {
    need_cover();
    CoveringOptions opt;
    opt.tol = std::max(tol, 1e-3);
    std::vector<InvariantSet> sets;
    for (const auto& s : in.cover) sets.push_back({s.set, s.colors});
    c = finish<IncidencePoint>(task, in, find_ls_intersection(sets, sphere_grid(in, n), opt), incidence_json);
  } else if (task == "hall") {
    require(in.matching.has_value(), "/matching", "task 'hall' needs 'matching'");
    Outcome<HallResult> out;
    try {
      const HallResult r = hall_matching(in.matching->adjacency(), in.matching->quotas);
      out = Outcome<HallResult>::ok(r, 0.0);
    } catch (const std::invalid_argument& e) {
      out = Outcome<HallResult>::precondition(e.what());
    }
    c = finish<HallResult>(task, in, out, [](const HallResult& r) {
      return r.feasible ? json{{"tau", r.tau}} : json{{"deficient", r.deficient}};
    });
  } else {
    throw SchemaError("/task", "unknown task '" + task + "'");
  }
  c.digest = instance_digest(in);
  c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

/// Re-validates a saved certificate: certified objects are rechecked,
/// other verdicts are reproduced by running the task again.
inline json revalidate(const json& cert, const Instance& in) {
  const std::string task = detail::field(cert, "task", "").get<std::string>();
  const std::string verdict = detail::field(cert, "verdict", "").get<std::string>();
  json out = {{"task", task}, {"claimed", verdict}};
  if (verdict == to_string(Verdict::kCertified)) {
    const Recheck r = recheck(task, in, detail::field(cert, "object", ""));
    out["reproduced"] = r.holds;
    out["residual"] = r.residual;
    out["residuals"] = r.residuals;
  } else {
    const Certificate again = run_task(task, in);
    out["reproduced"] = std::string(to_string(again.verdict)) == verdict;
    out["verdict"] = to_string(again.verdict);
  }
  return out;
}

/// Predicate and hypothesis checks. Returns a report with a "holds" flag.
inline json run_check(const std::string& task, const Instance& in) {
  using namespace detail;
  const int n = in.dimension;
  json j = {{"task", task}};
  if (task == "antipodal-pair") {
    require(!in.sets.empty() && in.pair.size() == 2, "/pair", "needs 'sets' and 'pair'");
    const auto r = is_antipodal_pair(in.pair[0], in.pair[1], in.sets.front());
    j["holds"] = r.antipodal;
    if (r.witness) j["normal"] = to_json(r.witness->u);
  } else if (task == "non-antipodal") {
    require(in.sets.size() >= 2, "/sets", "needs at least two sets");
    const auto r = is_non_antipodal_family(in.sets);
    j["holds"] = r.non_antipodal;
    if (!r.non_antipodal) {
      j["member"] = r.member;
      if (r.witness) j["pair"] = {to_json(r.witness->x), to_json(r.witness->y)};
    }
  } else if (task == "separated") {
    require(in.families.size() == 2, "/families", "needs exactly two families");
    const auto r = are_separated(in.families[0], in.families[1]);
    j["holds"] = r.has_value();
    if (r) j["witness"] = {{"functional", to_json(r->functional)}, {"threshold", r->threshold}, {"margin", r->margin}};
  } else if (task == "equalized") {
    require(!in.segments_a.empty(), "/segments", "needs 'segments'");
    const int alt = are_equalized(in.segments_a, in.segments_b);
    j["holds"] = alt != 0;
    j["alternative"] = alt;
  } else if (task == "l-convex") {
    require(!in.sets.empty(), "/sets", "needs 'sets'");
    const auto r = is_l_convex(in.sets.front(), in.options.k, sphere_grid(in, n, in.options.k));
    j["holds"] = r.convex;
    if (!r.convex) j["uncovered"] = to_json(r.uncovered);
  } else if (task == "covering" || task == "no-antipodal") {
    require(!in.cover.empty(), "/cover", "needs 'cover'");
    const auto sets = caps_of(in);
    if (task == "covering") {
      const auto r = verify_covering(sets, sphere_grid(in, n));
      j["holds"] = r.covered;
      j["worst"] = r.worst;
      if (!r.covered) j["witness"] = to_json(r.point);
    } else {
      bool all = true;
      json per = json::array();
      for (const auto& s : sets) {
        const auto r = check_no_antipodal_pairs(s);
        all = all && r.ok;
        per.push_back({{"ok", r.ok}, {"clearance", r.clearance}});
      }
      j["holds"] = all;
      j["sets"] = per;
    }
  } else if (task == "coloring") {
    require(!in.cover.empty(), "/cover", "needs 'cover'");
    json per = json::array();
    bool all = true;
    for (const auto& s : in.cover) {
      const auto err = coloring_error({s.set, s.colors});
      all = all && !err;
      per.push_back(err ? json(*err) : json(nullptr));
    }
    j["holds"] = all;
    j["errors"] = per;
  } else if (task == "subsphere") {
    require(!in.cover.empty(), "/cover", "needs 'cover'");
    const auto grid = sphere_grid(in, n, in.options.k);
    const auto err = flatcert::detail::subsphere_hypothesis(caps_of(in), in.options.k, grid.resolution, grid.seed);
    j["holds"] = !err;
    if (err) j["reason"] = *err;
  } else if (task == "flatness") {
    require(!in.measures.empty(), "/measures", "needs 'measures'");
    const auto r = is_flat_family(in.measures, direction_grid(in, n));
    j["holds"] = r.verdict == Flatness::kFlat;
    j["verdict"] = to_string(r.verdict);
    j["separated_supports"] = r.separated_supports;
    j["components"] = r.components;
    if (!r.note.empty()) j["note"] = r.note;
  } else {
    throw SchemaError("/task", "unknown check '" + task + "'");
  }
  return j;
}

inline const std::vector<std::string>& check_tasks() {
  static const std::vector<std::string> t = {"antipodal-pair", "non-antipodal", "separated", "equalized", "l-convex",
                                             "covering",       "no-antipodal",  "coloring",  "subsphere", "flatness"};
  return t;
}

/// Brute-force oracle reports mirroring the solver tasks.
inline json run_oracle(const std::string& task, const Instance& in, long long count) {
  using namespace detail;
  const int n = in.dimension;
  json j = {{"task", task}, {"count", count}};
  auto report = [](const oracle::OracleReport& r) {
    return json{{"best", r.best}, {"witness", to_json(r.witness)}, {"offset", r.offset}, {"digest", r.digest},
                {"evaluated", r.count}};
  };
  if (task == "transversal-hyperplane" || task == "families-alternative") {
    const bool fam = task == "families-alternative";
    require(fam ? !in.families.empty() : !in.sets.empty(), fam ? "/families" : "/sets", "missing input");
    const auto segs = fam ? oracle::family_segments(in.families) : oracle::set_segments(in.sets);
    const auto p = partition_of(in, static_cast<int>(fam ? in.families.size() : in.sets.size()));
    j["overlap"] = report(oracle::overlap_sweep(segs, n, count));
    j["separation"] = report(oracle::separation_sweep(segs, p.i1, p.i2, n, count));
    j["digest"] = fam ? std::string() : oracle::digest_of(in.sets);
  } else if (task == "sandwich" || task == "ham-sandwich") {
    require(!in.measures.empty(), "/measures", "missing input");
    j["fraction"] = report(oracle::fraction_sweep(in.measures, sandwich_alpha(in, task == "ham-sandwich"), n, count));
    j["digest"] = oracle::digest_of(in.measures);
  } else if (task == "measure-alternative") {
    require(!in.measures.empty(), "/measures", "missing input");
    const auto segs = oracle::measure_segments(in.measures);
    const auto p = partition_of(in, static_cast<int>(in.measures.size()));
    j["overlap"] = report(oracle::overlap_sweep(segs, n, count));
    j["separation"] = report(oracle::separation_sweep(segs, p.i1, p.i2, n, count));
    j["digest"] = oracle::digest_of(in.measures);
  } else if (task == "common-transversal") {
    require(!in.sets.empty(), "/sets", "missing input");
    const auto r = oracle::line_transversal(in.sets, count);
    j["feasible"] = r.feasible;
    j["best_residual"] = r.best_residual;
    j["direction"] = to_json(r.direction);
    j["digest"] = oracle::digest_of(in.sets);
  } else if (task == "colored") {
    require(!in.families.empty(), "/families", "missing input");
    const auto r = oracle::tuple_intersection(in.families);
    j["tuples"] = r.tuples;
    j["empty"] = r.empty;
  } else if (task == "hall") {
    require(in.matching.has_value(), "/matching", "missing input");
    j["feasible"] = oracle::quota_assignment_exists(in.matching->left, in.matching->right, in.matching->adjacency(),
                                                    in.matching->quotas);
  } else {
    throw SchemaError("/task", "no oracle for task '" + task + "'");
  }
  return j;
}

}  // namespace flatcert::cli
