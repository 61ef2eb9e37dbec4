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

// Derivative-free local refinement: Nelder-Mead simplex search and a
// finite-difference Gauss-Newton polish for systems of equations.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace flatcert {

struct LocalResult {
  Eigen::VectorXd x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

struct NelderMeadOptions {
  int budget = 500;
  double initial_step = 0.05;
  double f_tol = 1e-14;
  double x_tol = 1e-12;
};

/// Minimizes f starting from x0 with an axis-aligned initial simplex.
template <class F>
LocalResult nelder_mead(F&& f, const Eigen::VectorXd& x0, const NelderMeadOptions& opt = {}) {
  const int d = static_cast<int>(x0.size());
  LocalResult out;
  out.x = x0;
  if (d == 0) {
    out.value = f(x0);
    out.evaluations = 1;
    return out;
  }
  std::vector<Eigen::VectorXd> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  for (int i = 0; i < d; ++i) pts[i + 1](i) += opt.initial_step;
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };
  for (int i = 0; i <= d; ++i) vals[i] = eval(pts[i]);

  std::vector<int> order(d + 1);
  while (evals < opt.budget) {
    for (int i = 0; i <= d; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second = order[d - 1];
    double size = 0.0;
    for (int i = 0; i <= d; ++i) size = std::max(size, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
    if (vals[worst] - vals[best] <= opt.f_tol && size <= opt.x_tol) break;
    if (size <= opt.x_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i <= d; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= d;
    const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                       : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (int i = 0; i <= d; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  int best = 0;
  for (int i = 1; i <= d; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  out.x = pts[best];
  out.value = vals[best];
  out.evaluations = evals;
  return out;
}

/// Repeated Nelder-Mead with shrinking steps; total budget is shared.
template <class F>
LocalResult nelder_mead_restarts(F&& f, const Eigen::VectorXd& x0, double step, int budget,
                                 double target = -std::numeric_limits<double>::infinity()) {
  LocalResult best;
  best.x = x0;
  best.value = f(x0);
  best.evaluations = 1;
  int used = 1;
  while (used < budget && step > 1e-12) {
    NelderMeadOptions opt;
    opt.initial_step = step;
    opt.budget = std::min(budget - used, std::max(40, budget / 4));
    LocalResult r = nelder_mead(f, best.x, opt);
    used += r.evaluations;
    const bool improved = r.value < best.value;
    if (improved) {
      best.x = r.x;
      best.value = r.value;
    }
    if (best.value <= target) break;
    step *= improved ? 0.5 : 0.2;
  }
  best.evaluations = used;
  return best;
}

struct PolishResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;
  double max_abs = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Drives residual(x) to zero with minimum-norm Gauss-Newton steps using a
/// central-difference Jacobian. Handles under- and over-determined systems.
template <class R>
PolishResult gauss_newton(R&& residual, const Eigen::VectorXd& x0, double target = 1e-12,
                          int max_iter = 40, double fd_step = 1e-7) {
  PolishResult out;
  out.x = x0;
  out.residual = residual(x0);
  out.max_abs = out.residual.size() ? out.residual.cwiseAbs().maxCoeff() : 0.0;
  const int p = static_cast<int>(x0.size());
  for (int it = 0; it < max_iter && out.max_abs > target; ++it) {
    out.iterations = it + 1;
    Eigen::MatrixXd jac(out.residual.size(), p);
    for (int j = 0; j < p; ++j) {
      const double h = fd_step * std::max(1.0, std::abs(out.x(j)));
      Eigen::VectorXd xp = out.x;
      Eigen::VectorXd xm = out.x;
      xp(j) += h;
      xm(j) -= h;
      jac.col(j) = (residual(xp) - residual(xm)) / (2.0 * h);
    }
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-out.residual);
    if (!step.allFinite()) break;
    double alpha = 1.0;
    bool accepted = false;
    const double merit = out.residual.squaredNorm();
    for (int ls = 0; ls < 30; ++ls) {
      const Eigen::VectorXd xn = out.x + alpha * step;
      const Eigen::VectorXd rn = residual(xn);
      if (rn.allFinite() && rn.squaredNorm() < merit) {
        out.x = xn;
        out.residual = rn;
        out.max_abs = rn.cwiseAbs().maxCoeff();
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  return out;
}

}  // namespace flatcert
