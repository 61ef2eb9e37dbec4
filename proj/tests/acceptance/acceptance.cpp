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

// Acceptance driver: one PASS/FAIL line per criterion. With arguments, runs
// only the listed criteria (1-12).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "flatcert/alternative.hpp"
#include "flatcert/covering.hpp"
#include "flatcert/flats.hpp"
#include "flatcert/generate.hpp"
#include "flatcert/halfsphere.hpp"
#include "flatcert/hall.hpp"
#include "flatcert/measure_partition.hpp"
#include "flatcert/oracles.hpp"
#include "flatcert/predicates.hpp"
#include "flatcert/sections.hpp"
#include "flatcert/shapes.hpp"

namespace flatcert::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failures for one criterion; keeps the first few messages.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  void note(const std::string& s) { summary_ += (summary_.empty() ? "" : "; ") + s; }
  bool passed() const { return failures_ == 0 && checks_ > 0; }
  std::string report() const {
    std::ostringstream out;
    out << checks_ << " checks";
    if (failures_ > 0) out << ", " << failures_ << " failed";
    if (!summary_.empty()) out << "; " << summary_;
    for (const auto& n : notes_) out << " [" << n << "]";
    return out.str();
  }

 private:
  long long checks_ = 0;
  long long failures_ = 0;
  std::vector<std::string> notes_;
  std::string summary_;
};

template <typename... Args>
std::string str(const Args&... args) {
  std::ostringstream out;
  out.precision(6);
  (out << ... << args);
  return out.str();
}

constexpr double kDeg = kPi / 180.0;

std::vector<std::vector<int>> all_sides(int count) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask + 1 < (1 << count); ++mask) {
    std::vector<int> side(count);
    for (int i = 0; i < count; ++i) side[i] = mask >> i & 1;
    out.push_back(side);
  }
  return out;
}

std::vector<CapUnion> arc_fixture() {
  return {CapUnion({CapUnion::arc(0, 150)}), CapUnion({CapUnion::arc(120, 270)}), CapUnion({CapUnion::arc(240, 30)})};
}

DirectionGrid circle_grid() { return make_grid(2, 1, 2 * kPi / 720); }
DirectionGrid sphere_grid() { return make_grid(3, 1, 0.08); }

double degrees(const Vec& x) {
  const double a = std::atan2(x(1), x(0)) / kDeg;
  return a < 0 ? a + 360.0 : a;
}

// Largest |mu_i(H-) - alpha_i| from the atoms directly.
double mass_error(const std::vector<MeasureWithDeviation>& ms, const std::vector<double>& alpha,
                  const OrientedHyperplane& h) {
  double worst = 0.0;
  for (size_t i = 0; i < ms.size(); ++i) {
    worst = std::max(worst, std::abs(oracle::naive_cdf(ms[i], h.normal, h.offset) - alpha[i]));
  }
  return worst;
}

// Distances and deviations to a flat, from the vertices: both are convex in
// the point, so the extremes over a polytope sit at vertices.
double vertex_distance(const CompactSet& s, const Flat& f, bool deviation) {
  const Mat p = f.complement_projector();
  double best = deviation ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& piece : s.pieces()) {
    for (Eigen::Index j = 0; j < piece.cols(); ++j) {
      const double d = (p * (piece.col(j) - f.base)).norm();
      best = deviation ? std::max(best, d) : std::min(best, d);
    }
  }
  return best;
}

double spread_of(const std::vector<CompactSet>& sets, const Flat& f, bool deviation) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : sets) {
    const double d = deviation ? vertex_distance(s, f, true) : flat_distance(s, f);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

double max_distance(const std::vector<CompactSet>& sets, const Flat& f) {
  double hi = 0.0;
  for (const auto& s : sets) hi = std::max(hi, flat_distance(s, f));
  return hi;
}

// ---------------------------------------------------------------------------

Tally transversal_alternative() {
  Tally t;
  const auto t0 = Clock::now();
  gen::Rng rng(101);
  const auto grid = default_direction_grid(2);
  int separations = 0;
  int transversals = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const auto sets = gen::convex_tuple(rng, 2, 3);
    const auto segs = oracle::set_segments(sets);
    const auto overlap = oracle::overlap_sweep(segs, 2, 4096);
    for (const auto& p : Partition::all(3)) {
      const auto out = hyperplane_alternative(sets, p, grid);
      t.expect(out.certified(), str("instance ", inst, ": ", out.message));
      if (!out.certified()) continue;
      if (const auto* s = std::get_if<SeparationCertificate>(&*out.value)) {
        ++separations;
        const double gap = separation_gap(sets, s->hyperplane, p.i1, p.i2);
        const auto sweep = oracle::separation_sweep(segs, p.i1, p.i2, 2, 4096);
        t.expect(gap >= -1e-6, str("instance ", inst, ": gap ", gap));
        t.expect(sweep.best >= -1e-5 && 2 * gap >= sweep.best - 1e-5,
                 str("instance ", inst, ": gap ", gap, " vs oracle ", sweep.best));
      } else {
        ++transversals;
        const auto& c = std::get<TransversalCertificate>(*out.value);
        double worst = 0.0;
        for (const auto& s : sets) {
          const auto iv = oracle::naive_interval(s, c.hyperplane->normal);
          worst = std::max({worst, iv.lo - c.hyperplane->offset, c.hyperplane->offset - iv.hi});
        }
        t.expect(worst <= 1e-6, str("instance ", inst, ": transversal misses by ", worst));
        t.expect(overlap.best >= -1e-5, str("instance ", inst, ": oracle overlap ", overlap.best));
      }
    }
  }
  const double secs = seconds_since(t0);
  t.expect(secs < 60.0, str("runtime ", secs, " s"));
  t.note(str(transversals, " transversal and ", separations, " separation branches"));
  return t;
}

Tally ham_sandwich_cuts() {
  Tally t;
  gen::Rng rng(202);
  double slowest = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const int d = inst % 2 == 0 ? 2 : 3;
    const auto ms = gen::measure_family(rng, d, d, gen::uniform_int(rng, 40, 200), false);
    const auto t0 = Clock::now();
    const auto out = ham_sandwich(ms, default_direction_grid(d));
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    t.expect(secs < 5.0, str("instance ", inst, ": ", secs, " s"));
    t.expect(out.certified(), str("instance ", inst, " (d=", d, "): ", out.message));
    if (!out.certified()) continue;
    const double err = mass_error(ms, std::vector<double>(d, 0.5), out->hyperplane);
    t.expect(err <= 1e-6, str("instance ", inst, ": mass error ", err));
  }
  t.note(str("slowest ", slowest, " s"));
  return t;
}

Tally prescribed_cuts() {
  Tally t;
  gen::Rng rng(303);
  const auto grid = default_direction_grid(2);
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const auto ms = gen::measure_family(rng, 2, 2, gen::uniform_int(rng, 60, 150), true, 0.05, 0.45);
    for (int pattern = 0; pattern < 4; ++pattern) {
      std::vector<double> alpha;
      for (int i = 0; i < 2; ++i) alpha.push_back(pattern >> i & 1 ? 1 - ms[i].eps() : ms[i].eps());
      const auto out = generalized_ham_sandwich(ms, alpha, grid);
      t.expect(out.certified(), str("instance ", inst, " pattern ", pattern, ": ", out.message));
      if (!out.certified()) continue;
      const double err = mass_error(ms, alpha, out->hyperplane);
      worst = std::max(worst, err);
      t.expect(err <= 1e-6, str("instance ", inst, " pattern ", pattern, ": residual ", err));
    }
    auto limit = ms;
    for (auto& m : limit) m = m.with_eps(0.5 - 1e-9);
    const auto g = generalized_ham_sandwich(limit, {0.5 - 1e-9, 0.5 + 1e-9}, grid);
    const auto h = ham_sandwich(limit, grid);
    t.expect(g.certified() && h.certified(), str("instance ", inst, ": limit ", g.message, h.message));
    if (g.certified() && h.certified()) {
      const double gap = std::max(mass_error(limit, {0.5, 0.5}, g->hyperplane), mass_error(limit, {0.5, 0.5}, h->hyperplane));
      t.expect(gap <= 1e-6, str("instance ", inst, ": limit masses off by ", gap));
    }
  }
  t.note(str("worst residual ", worst));
  return t;
}

Tally equidistant_flats() {
  Tally t;
  gen::Rng rng(404);
  int solved = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const bool fat = inst % 2 == 1;
    const auto sets = fat ? gen::non_antipodal_triple(rng, 10.0, 6.0, 6.5, 24, true) : gen::non_antipodal_triple(rng, 8.0, 0.5, 1.5);
    const auto out = equidistant_k_flat(sets, 1);
    t.expect(out.certified(), str("triple ", inst, ": ", out.message));
    if (out.certified()) {
      const double s = spread_of(sets, out->flat, false);
      t.expect(s <= 1e-6, str("triple ", inst, ": spread ", s));
    }
    if (!fat) continue;
    const auto common = common_k_transversal(sets, 1);
    t.expect(common.certified(), str("fat triple ", inst, ": ", common.message));
    if (common.certified()) {
      ++solved;
      const double r = max_distance(sets, common->flat);
      t.expect(r <= 1e-6, str("fat triple ", inst, ": transversal residual ", r));
    }
  }
  for (int inst = 0; inst < 20; ++inst) {
    const auto sets = gen::non_antipodal_quadruple(rng);
    const auto out = equidistant_k_flat(sets, 1);
    t.expect(out.certified(), str("quadruple ", inst, ": ", out.message));
    if (out.certified()) {
      const double s = spread_of(sets, out->flat, false);
      t.expect(s <= 1e-6, str("quadruple ", inst, ": spread ", s));
    }
  }
  t.note(str(solved, " common transversals"));
  return t;
}

Tally equal_deviation_flats() {
  Tally t;
  gen::Rng rng(505);
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const auto sets = gen::non_antipodal_triple(rng, 8.0, 0.5, 1.5, gen::uniform_int(rng, 3, 8));
    const auto out = equal_deviation_k_flat(sets, 1);
    t.expect(out.certified(), str("instance ", inst, ": ", out.message));
    if (!out.certified()) continue;
    const double s = spread_of(sets, out->flat, true);
    worst = std::max(worst, s);
    t.expect(s <= 1e-6, str("instance ", inst, ": recomputed spread ", s));
  }
  t.note(str("worst spread ", worst));
  return t;
}

std::vector<std::vector<CapUnion>> cover_fixtures(gen::Rng& rng) {
  std::vector<std::vector<CapUnion>> out{arc_fixture()};
  for (int i = 0; i < 10; ++i) out.push_back(gen::arc_cover(rng));
  for (int i = 0; i < 10; ++i) out.push_back(gen::tetra_cover(rng));
  return out;
}

Tally partition_points() {
  Tally t;
  gen::Rng rng(606);
  double worst = 0.0;
  for (const auto& cover : cover_fixtures(rng)) {
    const auto grid = cover.front().ambient() == 2 ? circle_grid() : sphere_grid();
    for (const auto& side : all_sides(static_cast<int>(cover.size()))) {
      const auto out = find_partition_point(cover, side, grid);
      t.expect(out.certified(), out.message);
      if (!out.certified()) continue;
      const double r = certify_partition_point(cover, side, out->x).residual;
      worst = std::max(worst, r);
      t.expect(r <= 1e-3, str("membership residual ", r));
    }
  }
  const auto fixture = find_partition_point(arc_fixture(), {0, 1, 1}, circle_grid());
  t.expect(fixture.certified(), "fixture: " + fixture.message);
  if (fixture.certified()) {
    const double deg = degrees(fixture->x);
    t.expect(deg >= 59.5 && deg <= 90.5, str("fixture point at ", deg, " degrees"));
    t.note(str("fixture x at ", deg, " degrees"));
  }
  t.note(str("worst residual ", worst));
  return t;
}

Tally deep_points() {
  Tally t;
  gen::Rng rng(606);
  for (const auto& cover : cover_fixtures(rng)) {
    const int ambient = cover.front().ambient();
    const auto out = find_deep_point(cover, ambient == 2 ? circle_grid() : sphere_grid());
    t.expect(out.certified(), out.message);
    if (!out.certified()) continue;
    int count = 0;
    for (const auto& s : cover) count += std::min(s.distance(out->x), s.distance(-out->x)) <= 1e-3;
    t.expect(count >= ambient + 1, str("recounted ", count, " incidences on S^", ambient - 1));
  }
  return t;
}

Tally hall_agreement() {
  Tally t;
  gen::Rng rng(808);
  int infeasible = 0;
  for (int inst = 0; inst < 600; ++inst) {
    const auto m = gen::matching(rng);
    const auto r = hall_matching(m.adj, m.quota);
    const bool want = oracle::quota_assignment_exists(m.nv, m.nw, m.adj, m.quota);
    t.expect(r.feasible == want, str("instance ", inst, ": solver ", r.feasible, " oracle ", want));
    if (r.feasible) {
      t.expect(is_quota_matching(m.adj, m.quota, r.tau), str("instance ", inst, ": tau is not a quota matching"));
    } else {
      ++infeasible;
      t.expect(is_deficient(m.adj, m.quota, r.deficient), str("instance ", inst, ": V' is not deficient"));
    }
  }
  t.note(str(infeasible, " infeasible"));
  return t;
}

Tally sections() {
  Tally t;
  gen::Rng rng(909);
  const auto grid = make_grid(2, 1, 2 * kPi / 256);
  for (int inst = 0; inst < 50; ++inst) {
    const int m = 3 + inst % 3;
    Mat pts(2, m);
    for (int j = 0; j < m; ++j) pts.col(j) = vec({gen::uniform(rng, -3, 3), gen::uniform(rng, -3, 3)});
    const auto out = polytope_sections_config(pts, 1, grid);
    t.expect(out.certified(), str("instance ", inst, ": ", out.message));
    if (!out.certified()) continue;
    const Vec proj = out->u.transpose() * pts;
    const double top = proj.maxCoeff();
    const double bottom = proj.minCoeff();
    int touching = 0;
    for (int j = 0; j < m; ++j) touching += std::min(top - proj(j), proj(j) - bottom) <= 1e-6;
    t.expect(top - bottom > 1e-6, str("instance ", inst, ": support lines coincide"));
    t.expect(touching >= 3, str("instance ", inst, ": ", touching, " touching points"));
  }
  return t;
}

Tally halfspheres() {
  Tally t;
  gen::Rng rng(1010);
  for (int inst = 0; inst < 20; ++inst) {
    const int n = inst < 10 ? 2 : 3;
    const int k = n == 2 ? 1 : 1 + inst % 2;
    const auto sets = gen::halfsphere_family(rng, n, n);
    const auto grid = make_grid(n, k, n == 2 ? 2 * kPi / 256 : (k == 1 ? 0.1 : 0.4));
    const auto out = halfsphere_piercing(sets, k, grid);
    t.expect(out.certified(), str("instance ", inst, ": ", out.message));
    if (!out.certified()) continue;
    const Mat& b = out->halfsphere.basis;
    for (size_t i = 0; i < sets.size(); ++i) {
      const Vec& w = out->witnesses[i];
      const double off = (w - b * (b.transpose() * w)).norm();
      t.expect(off <= 1e-9 && std::abs(w.norm() - 1) <= 1e-9 && w.dot(b.col(0)) >= -1e-9,
               str("instance ", inst, ": witness off the half-sphere"));
      t.expect(sets[i].signed_distance(w) <= -kSolveTol, str("instance ", inst, ": witness outside set ", i + 1));
    }
  }
  int rejected = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const int n = inst < 10 ? 2 : 3;
    const int k = n == 2 ? 1 : 1 + inst % 2;
    std::vector<CapUnion> sets;
    for (int i = 0; i < n; ++i) {
      sets.emplace_back(std::vector<Cap>{{gen::random_unit(rng, n), gen::uniform(rng, 10.0, 60.0) * kDeg}});
    }
    const auto grid = make_grid(n, k, n == 2 ? 2 * kPi / 256 : (k == 1 ? 0.1 : 0.4));
    const auto out = halfsphere_piercing(sets, k, grid);
    rejected += out.verdict == Verdict::kPreconditionFailed;
    t.expect(out.verdict == Verdict::kPreconditionFailed, str("violating instance ", inst, " not rejected"));
  }
  t.note(str(rejected, " of 20 violating instances rejected"));
  return t;
}

std::vector<Vec> boundary_points(gen::Rng& rng, const Piece& p) {
  std::vector<Vec> out;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    out.push_back(p.col(j));
    const double s = gen::uniform(rng, 0.1, 0.9);
    out.push_back((1 - s) * p.col(j) + s * p.col((j + 1) % p.cols()));
  }
  return out;
}

Tally predicates() {
  Tally t;
  gen::Rng rng(1111);
  for (int inst = 0; inst < 600; ++inst) {
    const int m = gen::uniform_int(rng, 3, 8);
    const Piece p = inst % 3 == 0 ? shapes::regular_polygon(vec({0, 0}), 2.0, m, gen::uniform(rng, 0, 1))
                                  : gen::random_polygon(rng, vec({gen::uniform(rng, -5, 5), 1.0}), 2.0, m);
    const auto pts = boundary_points(rng, p);
    const Vec x = pts[gen::uniform_int(rng, 0, static_cast<int>(pts.size()) - 1)];
    const Vec y = pts[gen::uniform_int(rng, 0, static_cast<int>(pts.size()) - 1)];
    const bool got = is_antipodal_pair(x, y, CompactSet({p})).antipodal;
    const bool want = oracle::antipodal_pair_2d(x, y, oracle::points_2d(CompactSet({p})));
    t.expect(got == want, str("antipodal instance ", inst));
  }
  int checked = 0;
  while (checked < 600) {
    const Piece a = gen::random_polygon(rng, vec({0, 0}), gen::uniform(rng, 0.5, 2), gen::uniform_int(rng, 3, 8));
    const Piece b = gen::random_polygon(rng, vec({gen::uniform(rng, -4, 4), gen::uniform(rng, -4, 4)}),
                                        gen::uniform(rng, 0.5, 2), gen::uniform_int(rng, 3, 8));
    const CompactSet sa({a});
    const CompactSet sb({b});
    const double gap = oracle::separation_gap_2d(oracle::points_2d(sa), oracle::points_2d(sb));
    if (std::abs(gap) < 1e-7) continue;
    ++checked;
    t.expect(are_separated({sa}, {sb}).has_value() == (gap > 0), str("separation instance ", checked));
  }
  for (int inst = 0; inst < 1000; ++inst) {
    auto draw = [&] {
      std::vector<Segment> s(gen::uniform_int(rng, 1, 3));
      for (auto& x : s) {
        const int lo = gen::uniform_int(rng, 0, 4);
        x = {double(lo), double(gen::uniform_int(rng, lo, 5))};
      }
      return s;
    };
    const auto a = draw();
    const auto b = draw();
    t.expect(are_equalized(a, b) == oracle::equalized(a, b), str("equalized instance ", inst));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Rigid motions. Each solver's certificate is carried along a random motion
// and rechecked on the moved instance; the moved instance is also solved
// afresh and must certify.

struct Motion {
  Mat r;
  Vec s;
  Motion(gen::Rng& rng, int n) : r(random_rotation(n, rng)), s(n) {
    for (int i = 0; i < n; ++i) s(i) = gen::uniform(rng, -5, 5);
  }
  std::vector<CompactSet> operator()(const std::vector<CompactSet>& sets) const {
    std::vector<CompactSet> out;
    for (const auto& x : sets) out.push_back(x.transformed(r, s));
    return out;
  }
  std::vector<MeasureWithDeviation> operator()(const std::vector<MeasureWithDeviation>& ms) const {
    std::vector<MeasureWithDeviation> out;
    for (const auto& m : ms) out.push_back(m.transformed(r, s));
    return out;
  }
  OrientedHyperplane operator()(const OrientedHyperplane& h) const {
    const Vec v = r * h.normal;
    return {v, h.offset + v.dot(s)};
  }
  Flat operator()(const Flat& f) const {
    Flat g{r * f.basis, Vec()};
    const Vec p = r * f.base + s;
    g.base = p - g.basis * (g.basis.transpose() * p);
    return g;
  }
};

std::vector<CapUnion> rotate(const std::vector<CapUnion>& sets, const Mat& r) {
  std::vector<CapUnion> out;
  for (const auto& v : sets) out.push_back(v.rotated(r));
  return out;
}

class Drift {
 public:
  Drift(Tally& t, std::string solver) : t_(t), solver_(std::move(solver)) {}
  void compare(double before, double after) {
    worst_ = std::max(worst_, std::abs(after - before));
    t_.expect(std::abs(after - before) <= 1e-6, str(solver_, ": drift ", std::abs(after - before)));
  }
  template <typename O>
  void resolved(const O& out) {
    t_.expect(out.certified(), str(solver_, " on moved instance: ", out.message));
  }
  double worst() const { return worst_; }

 private:
  Tally& t_;
  std::string solver_;
  double worst_ = 0.0;
};

Tally invariance() {
  Tally t;
  gen::Rng rng(1212);
  std::vector<std::pair<std::string, double>> drifts;
  auto record = [&](const std::string& name, const Drift& d) { drifts.emplace_back(name, d.worst()); };

  {
    Drift d(t, "hyperplane_alternative");
    const auto grid = default_direction_grid(2);
    for (int inst = 0; inst < 100; ++inst) {
      const auto sets = gen::convex_tuple(rng, 2, 3);
      const auto p = Partition::all(3)[inst % 6];
      const auto out = hyperplane_alternative(sets, p, grid);
      t.expect(out.certified(), out.message);
      if (!out.certified()) continue;
      const Motion mv(rng, 2);
      const auto moved = mv(sets);
      if (const auto* s = std::get_if<SeparationCertificate>(&*out.value)) {
        d.compare(separation_gap(sets, s->hyperplane, p.i1, p.i2), separation_gap(moved, mv(s->hyperplane), p.i1, p.i2));
      } else {
        const auto& c = std::get<TransversalCertificate>(*out.value);
        d.compare(certify_transversal(sets, *c.hyperplane).residual,
                  certify_transversal(moved, mv(*c.hyperplane)).residual);
      }
      d.resolved(hyperplane_alternative(moved, p, grid));
    }
    record("hyperplane_alternative", d);
  }
  {
    Drift d(t, "ham_sandwich");
    for (int inst = 0; inst < 100; ++inst) {
      const int n = inst % 2 == 0 ? 2 : 3;
      const auto ms = gen::measure_family(rng, n, n, 60, false);
      const auto out = ham_sandwich(ms, default_direction_grid(n));
      t.expect(out.certified(), out.message);
      if (!out.certified()) continue;
      const Motion mv(rng, n);
      const std::vector<double> half(n, 0.5);
      d.compare(mass_error(ms, half, out->hyperplane), mass_error(mv(ms), half, mv(out->hyperplane)));
      d.resolved(ham_sandwich(mv(ms), default_direction_grid(n)));
    }
    record("ham_sandwich", d);
  }
  {
    Drift d(t, "generalized_ham_sandwich");
    const auto grid = default_direction_grid(2);
    for (int inst = 0; inst < 100; ++inst) {
      const auto ms = gen::measure_family(rng, 2, 2, 80, true, 0.05, 0.45);
      const std::vector<double> alpha{inst % 2 ? ms[0].eps() : 1 - ms[0].eps(), inst % 4 < 2 ? ms[1].eps() : 1 - ms[1].eps()};
      const auto out = generalized_ham_sandwich(ms, alpha, grid);
      t.expect(out.certified(), out.message);
      if (!out.certified()) continue;
      const Motion mv(rng, 2);
      d.compare(mass_error(ms, alpha, out->hyperplane), mass_error(mv(ms), alpha, mv(out->hyperplane)));
      d.resolved(generalized_ham_sandwich(mv(ms), alpha, grid));
    }
    record("generalized_ham_sandwich", d);
  }
  {
    Drift d(t, "measure_alternative");
    const auto grid = default_direction_grid(2);
    for (int inst = 0; inst < 100; ++inst) {
      const bool separated = inst % 2 == 0;
      const auto ms = gen::measure_family(rng, 2, 3, 60, separated, 0.1, 0.3);
      const auto p = Partition::all(3)[inst % 6];
      const auto out = measure_alternative(ms, p, grid);
      t.expect(out.certified(), out.message);
      if (!out.certified()) continue;
      const Motion mv(rng, 2);
      const auto moved = mv(ms);
      if (const auto* s = std::get_if<AlmostSeparationCertificate>(&*out.value)) {
        auto margin = [&](const std::vector<MeasureWithDeviation>& m, const OrientedHyperplane& h) {
          double best = std::numeric_limits<double>::infinity();
          for (int i : s->i1) best = std::min(best, oracle::naive_cdf(m[i], h.normal, h.offset) - (1 - m[i].eps()));
          for (int i : s->i2) best = std::min(best, oracle::naive_cdf(m[i], -h.normal, -h.offset) - (1 - m[i].eps()));
          return best;
        };
        d.compare(margin(ms, s->hyperplane), margin(moved, mv(s->hyperplane)));
      } else {
        const auto& c = std::get<MeasureCutCertificate>(*out.value);
        auto reliability = [&](const std::vector<MeasureWithDeviation>& m, const OrientedHyperplane& h) {
          double best = std::numeric_limits<double>::infinity();
          for (const auto& mu : m) {
            const double below = oracle::naive_cdf(mu, h.normal, h.offset);
            const double above = oracle::naive_cdf(mu, -h.normal, -h.offset);
            best = std::min({best, below - mu.eps(), above - mu.eps()});
          }
          return best;
        };
        d.compare(reliability(ms, c.hyperplane), reliability(moved, mv(c.hyperplane)));
      }
      d.resolved(measure_alternative(moved, p, grid));
    }
    record("measure_alternative", d);
  }
  auto flat_solver = [&](const std::string& name, auto solve, bool deviation, bool fat) {
    Drift d(t, name);
    for (int inst = 0; inst < 100; ++inst) {
      const auto sets = fat ? gen::non_antipodal_triple(rng, 10.0, 6.0, 6.5, 24, true) : gen::non_antipodal_triple(rng, 8.0, 0.5, 1.5);
      const auto out = solve(sets);
      t.expect(out.certified(), name + ": " + out.message);
      if (!out.certified()) continue;
      const Motion mv(rng, 2);
      const auto moved = mv(sets);
      if (fat) {
        d.compare(max_distance(sets, out->flat), max_distance(moved, mv(out->flat)));
      } else {
        d.compare(spread_of(sets, out->flat, deviation), spread_of(moved, mv(out->flat), deviation));
      }
      d.resolved(solve(moved));
    }
    record(name, d);
  };
  flat_solver("equidistant_k_flat", [](const auto& s) { return equidistant_k_flat(s, 1); }, false, false);
  flat_solver("common_k_transversal", [](const auto& s) { return common_k_transversal(s, 1); }, false, true);
  flat_solver("equal_deviation_k_flat", [](const auto& s) { return equal_deviation_k_flat(s, 1); }, true, false);
  {
    Drift d(t, "polytope_sections_config");
    const auto grid = make_grid(2, 1, 2 * kPi / 256);
    for (int inst = 0; inst < 100; ++inst) {
      const int m = 3 + inst % 3;
      Mat pts(2, m);
      for (int j = 0; j < m; ++j) pts.col(j) = vec({gen::uniform(rng, -3, 3), gen::uniform(rng, -3, 3)});
      const auto out = polytope_sections_config(pts, 1, grid);
      t.expect(out.certified(), out.message);
      if (!out.certified()) continue;
      const Motion mv(rng, 2);
      const Mat moved = (mv.r * pts).colwise() + mv.s;
      auto worst_touch = [&](const Mat& p, const Vec& u) {
        const Vec proj = u.transpose() * p;
        double w = 0.0;
        for (int i : out->upper) w = std::max(w, proj.maxCoeff() - proj(i));
        for (int i : out->lower) w = std::max(w, proj(i) - proj.minCoeff());
        return w;
      };
      d.compare(worst_touch(pts, out->u), worst_touch(moved, mv.r * out->u));
      d.resolved(polytope_sections_config(moved, 1, grid));
    }
    record("polytope_sections_config", d);
  }
  {
    Drift d(t, "halfsphere_piercing");
    for (int inst = 0; inst < 100; ++inst) {
      const int n = inst % 2 == 0 ? 2 : 3;
      const auto sets = gen::halfsphere_family(rng, n, n);
      const auto grid = make_grid(n, 1, n == 2 ? 2 * kPi / 256 : 0.1);
      const auto out = halfsphere_piercing(sets, 1, grid);
      t.expect(out.certified(), out.message);
      if (!out.certified()) continue;
      const Mat r = random_rotation(n, rng);
      const auto moved = rotate(sets, r);
      d.compare(certify_halfsphere(sets, out->halfsphere).margin, certify_halfsphere(moved, HalfSphere{r * out->halfsphere.basis}).margin);
      d.resolved(halfsphere_piercing(moved, 1, grid));
    }
    record("halfsphere_piercing", d);
  }
  {
    Drift dp(t, "find_partition_point");
    Drift dd(t, "find_deep_point");
    for (int inst = 0; inst < 100; ++inst) {
      const auto cover = inst % 2 == 0 ? gen::arc_cover(rng) : gen::tetra_cover(rng);
      const int n = cover.front().ambient();
      const auto grid = n == 2 ? circle_grid() : sphere_grid();
      const auto sides = all_sides(n + 1);
      const auto& side = sides[inst % sides.size()];
      const Mat r = random_rotation(n, rng);
      const auto moved = rotate(cover, r);
      const auto out = find_partition_point(cover, side, grid);
      t.expect(out.certified(), out.message);
      if (out.certified()) {
        dp.compare(certify_partition_point(cover, side, out->x).residual, certify_partition_point(moved, side, r * out->x).residual);
        dp.resolved(find_partition_point(moved, side, grid));
      }
      const auto deep = find_deep_point(cover, grid);
      t.expect(deep.certified(), deep.message);
      if (deep.certified()) {
        auto depth = [&](const std::vector<CapUnion>& sets, const Vec& x) {
          std::vector<double> ds;
          for (const auto& s : sets) ds.push_back(std::min(s.distance(x), s.distance(-x)));
          std::sort(ds.begin(), ds.end());
          return ds[n];
        };
        dd.compare(depth(cover, deep->x), depth(moved, r * deep->x));
        dd.resolved(find_deep_point(moved, grid));
      }
    }
    record("find_partition_point", dp);
    record("find_deep_point", dd);
  }
  double worst = 0.0;
  for (const auto& [name, w] : drifts) worst = std::max(worst, w);
  t.note(str(drifts.size(), " solvers, worst drift ", worst));
  return t;
}

}  // namespace
}  // namespace flatcert::acceptance

int main(int argc, char** argv) {
  using namespace flatcert::acceptance;
  const std::vector<std::pair<const char*, std::function<Tally()>>> criteria = {
      {"hyperplane alternative vs direction sweep", transversal_alternative},
      {"ham sandwich in R^2 and R^3", ham_sandwich_cuts},
      {"prescribed-fraction cuts of flat families", prescribed_cuts},
      {"equidistant flats and common transversals", equidistant_flats},
      {"equal-deviation flats", equal_deviation_flats},
      {"covering partition points", partition_points},
      {"covering deep points", deep_points},
      {"quota matchings vs enumeration", hall_agreement},
      {"polytope sections", sections},
      {"half-sphere piercing", halfspheres},
      {"predicates vs oracles", predicates},
      {"rigid-motion invariance", invariance},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }
  int failed = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 64;
    }
    const auto& [name, run] = criteria[id - 1];
    const auto t0 = Clock::now();
    Tally t;
    try {
      t = run();
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    failed += !t.passed();
    std::printf("criterion %2d %s  %s (%.1f s): %s\n", id, t.passed() ? "PASS" : "FAIL", name, seconds_since(t0),
                t.report().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
