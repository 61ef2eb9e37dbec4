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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "flatcert/generate.hpp"
#include "instance_io.hpp"
#include "svg.hpp"
#include "tasks.hpp"

namespace {

using flatcert::cli::json;
namespace cli = flatcert::cli;
namespace gen = flatcert::gen;

constexpr int kExitSchema = 64;

struct Globals {
  std::string instance;
  std::optional<double> tol;
  std::optional<double> grid_res;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string svg;
};

void add_globals(CLI::App* app, Globals& g) {
  app->add_option("--instance,-i", g.instance, "instance JSON file");
  app->add_option("--tol", g.tol, "task tolerance (default 1e-6)")->check(CLI::PositiveNumber);
  app->add_option("--grid-res", g.grid_res, "grid resolution in radians")->check(CLI::NonNegativeNumber);
  app->add_option("--seed", g.seed, "seed for grids and generators");
  app->add_option("--out,-o", g.out, "write JSON here instead of stdout");
  app->add_option("--svg", g.svg, "write an SVG rendering here");
}

cli::Instance load(const Globals& g) {
  if (g.instance.empty()) throw cli::SchemaError("", "--instance is required");
  cli::Instance in = cli::read_instance(g.instance);
  if (g.tol) in.options.tol = *g.tol;
  if (g.grid_res) in.options.grid_res = *g.grid_res;
  if (g.seed) in.options.seed = *g.seed;
  return in;
}

void emit(const Globals& g, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    cli::write_atomic(g.out, text);
  }
}

void emit_svg(const Globals& g, const cli::Instance& in, const json& cert) {
  if (g.svg.empty()) return;
  if (in.dimension < 2 && in.cover.empty()) {
    std::cerr << "flatcert: no SVG for dimension " << in.dimension << "\n";
    return;
  }
  cli::write_atomic(g.svg, cli::render_svg(in, cert));
}

std::string pick_task(const std::string& given, const cli::Instance& in, const std::vector<std::string>& allowed) {
  const std::string task = given.empty() ? in.task : given;
  if (task.empty()) throw cli::SchemaError("/task", "no task given on the command line or in the instance");
  if (std::find(allowed.begin(), allowed.end(), task) == allowed.end()) {
    std::string list;
    for (const auto& t : allowed) list += (list.empty() ? "" : ", ") + t;
    throw cli::SchemaError("/task", "task '" + task + "' is not one of: " + list);
  }
  return task;
}

struct GenParams {
  std::string kind;
  int n = 2;
  int count = 0;
  int atoms = 60;
  bool separated = false;
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  int members = 3;
  int max_v = 3;
  int max_w = 6;
  double density = 0.5;
};

cli::Instance generate(const GenParams& p, std::uint64_t seed) {
  gen::Rng rng(seed);
  cli::Instance in;
  in.options.seed = seed;
  auto range = [](bool ok, const std::string& what) {
    if (!ok) throw cli::SchemaError("/gen", what);
  };
  if (p.kind == "convex-tuple") {
    range(p.n == 2 || p.n == 3, "--n must be 2 or 3");
    in.dimension = p.n;
    in.sets = gen::convex_tuple(rng, p.n, p.count > 0 ? p.count : p.n + 1);
    in.task = "transversal-hyperplane";
  } else if (p.kind == "non-antipodal") {
    range(p.n == 2 || p.n == 3, "--n must be 2 or 3");
    in.dimension = p.n;
    in.sets = p.n == 2 ? gen::non_antipodal_triple(rng, 10.0, 0.5, 2.0) : gen::non_antipodal_quadruple(rng);
    in.task = "equidistant-flat";
  } else if (p.kind == "measure-family") {
    range(p.n == 2 || p.n == 3, "--n must be 2 or 3");
    range(p.atoms >= 1 && p.atoms <= 200, "--atoms must lie in [1, 200]");
    range(p.eps_lo >= 0 && p.eps_hi < 0.5 && p.eps_lo <= std::max(p.eps_lo, p.eps_hi), "eps range must lie in [0, 1/2)");
    in.dimension = p.n;
    in.measures = gen::measure_family(rng, p.n, p.count > 0 ? p.count : p.n, p.atoms, p.separated, p.eps_lo, p.eps_hi);
    in.task = p.separated && p.eps_lo > 0 ? "sandwich" : "ham-sandwich";
  } else if (p.kind == "sphere-cover") {
    range(p.n == 1 || p.n == 2, "--n is the sphere dimension and must be 1 or 2");
    in.dimension = p.n + 1;
    for (const auto& s : p.n == 1 ? gen::arc_cover(rng) : gen::tetra_cover(rng)) in.cover.push_back({s, {}});
    in.task = "partition-point";
  } else if (p.kind == "halfsphere-family") {
    range(p.n == 2 || p.n == 3, "--n is the ambient dimension and must be 2 or 3");
    in.dimension = p.n;
    for (const auto& s : gen::halfsphere_family(rng, p.n, p.count > 0 ? p.count : p.n)) in.cover.push_back({s, {}});
    in.task = "halfsphere";
  } else if (p.kind == "matching") {
    range(p.max_v >= 1 && p.max_w >= p.max_v && p.max_w <= 12, "need 1 <= max-v <= max-w <= 12");
    range(p.density >= 0 && p.density <= 1, "--density must lie in [0, 1]");
    const auto m = gen::matching(rng, p.max_v, p.max_w, p.density);
    cli::MatchingData md{m.nv, m.nw, {}, m.quota};
    for (int v = 0; v < m.nv; ++v) {
      for (int w = 0; w < m.nw; ++w) {
        if (m.adj[v][w]) md.edges.emplace_back(v, w);
      }
    }
    in.dimension = 1;
    in.matching = md;
    in.task = "hall";
  } else if (p.kind == "families") {
    range(p.n == 2 || p.n == 3, "--n must be 2 or 3");
    range(p.members >= 1 && p.members <= 6, "--members must lie in [1, 6]");
    in.dimension = p.n;
    const int q = p.count > 0 ? p.count : p.n + 1;
    for (int f = 0; f < q; ++f) {
      flatcert::Vec c(p.n);
      for (int d = 0; d < p.n; ++d) c(d) = gen::uniform(rng, -3.0, 3.0);
      std::vector<flatcert::CompactSet> fam;
      for (int m = 0; m < p.members; ++m) {
        flatcert::Vec shift(p.n);
        for (int d = 0; d < p.n; ++d) shift(d) = gen::uniform(rng, -0.8, 0.8);
        const double r = gen::uniform(rng, 0.5, 1.5);
        flatcert::Piece piece = p.n == 2 ? gen::random_polygon(rng, c + shift, r, 6) : gen::random_polytope3(rng, c + shift, r, 8);
        piece.conservativeResize(Eigen::NoChange, piece.cols() + 1);
        piece.col(piece.cols() - 1) = c;
        fam.emplace_back(std::vector<flatcert::Piece>{piece});
      }
      in.families.push_back(std::move(fam));
    }
    in.task = "families-alternative";
  } else if (p.kind == "points") {
    range(p.n == 2 || p.n == 3, "--n must be 2 or 3");
    const int m = p.count > 0 ? p.count : 5;
    range(m >= p.n + 1 && m <= 64, "--count must lie in [n+1, 64]");
    flatcert::Mat pts(p.n, m);
    for (int j = 0; j < m; ++j) {
      for (int d = 0; d < p.n; ++d) pts(d, j) = gen::uniform(rng, -5.0, 5.0);
    }
    in.dimension = p.n;
    in.points = pts;
    in.task = "sections";
  } else {
    throw cli::SchemaError("/gen", "unknown kind '" + p.kind + "'");
  }
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatcert: search-and-certify solvers for transversal and partition theorems"};
  app.require_subcommand(1);
  Globals g;
  std::string task;

  auto* solve = app.add_subcommand("solve", "run a solver and print its certificate");
  solve->add_option("task", task, "solver task (defaults to the instance's task)");
  add_globals(solve, g);

  auto* lab = app.add_subcommand("lab", "covering lab: partition-point, deep-point, ls, hall");
  lab->add_option("task", task, "lab task");
  add_globals(lab, g);

  std::string certificate;
  auto* check = app.add_subcommand("check", "evaluate a predicate or re-validate a certificate");
  check->add_option("task", task, "check name");
  check->add_option("--certificate,-c", certificate, "certificate JSON to re-validate");
  add_globals(check, g);

  long long count = 4096;
  auto* orc = app.add_subcommand("oracle", "brute-force reference for a solver task");
  orc->add_option("task", task, "task to mirror");
  orc->add_option("--count", count, "number of sweep directions")->check(CLI::PositiveNumber);
  add_globals(orc, g);

  GenParams gp;
  auto* gn = app.add_subcommand("gen", "generate a random instance");
  gn->add_option("kind", gp.kind, "convex-tuple, non-antipodal, measure-family, sphere-cover, halfsphere-family, "
                                  "matching, families, points")
      ->required();
  gn->add_option("--n", gp.n, "dimension (sphere dimension for sphere-cover)");
  gn->add_option("--count", gp.count, "number of sets, measures, families or points");
  gn->add_option("--atoms", gp.atoms, "atoms per measure");
  gn->add_flag("--separated", gp.separated, "measures with disjoint support hulls");
  gn->add_option("--eps-lo", gp.eps_lo, "smallest deviation");
  gn->add_option("--eps-hi", gp.eps_hi, "largest deviation");
  gn->add_option("--members", gp.members, "members per family");
  gn->add_option("--max-v", gp.max_v, "largest left side of a matching instance");
  gn->add_option("--max-w", gp.max_w, "largest right side of a matching instance");
  gn->add_option("--density", gp.density, "edge probability");
  add_globals(gn, g);

  auto* plot = app.add_subcommand("plot", "render an instance and optional certificate as SVG");
  plot->add_option("--certificate,-c", certificate, "certificate JSON to overlay");
  add_globals(plot, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }

  try {
    if (solve->parsed() || lab->parsed()) {
      const cli::Instance in = load(g);
      const auto& allowed = solve->parsed() ? cli::solve_tasks() : cli::lab_tasks();
      const std::string t = pick_task(task, in, allowed);
      const cli::Certificate c = cli::run_task(t, in);
      const json j = c.to_json();
      emit(g, j);
      emit_svg(g, in, j);
      if (c.verdict != flatcert::Verdict::kCertified) std::cerr << "flatcert: " << c.message << "\n";
      return flatcert::exit_code(c.verdict);
    }
    if (check->parsed()) {
      const cli::Instance in = load(g);
      if (!certificate.empty()) {
        const json rep = cli::revalidate(cli::parse_file(certificate), in);
        emit(g, rep);
        return rep.at("reproduced").get<bool>() ? 0 : 1;
      }
      emit(g, cli::run_check(pick_task(task, in, cli::check_tasks()), in));
      return 0;
    }
    if (orc->parsed()) {
      const cli::Instance in = load(g);
      const std::string t = task.empty() ? in.task : task;
      emit(g, cli::run_oracle(t, in, count));
      return 0;
    }
    if (gn->parsed()) {
      const cli::Instance in = generate(gp, g.seed.value_or(0));
      emit(g, cli::save_instance(in));
      emit_svg(g, in, nullptr);
      return 0;
    }
    if (plot->parsed()) {
      const cli::Instance in = load(g);
      if (g.svg.empty()) throw cli::SchemaError("", "--svg is required for plot");
      emit_svg(g, in, certificate.empty() ? json(nullptr) : cli::parse_file(certificate));
      return 0;
    }
  } catch (const cli::SchemaError& e) {
    std::cerr << "flatcert: schema error at " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "flatcert: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
