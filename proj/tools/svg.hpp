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

// SVG rendering of 2-D instances and their certified objects. Instances in
// dimension 3 are drawn as a projection to the first two coordinates and
// labeled as a sketch.

#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "flatcert/oracles.hpp"
#include "instance_io.hpp"

namespace flatcert::cli {

namespace detail {

class SvgCanvas {
 public:
  void include(double x, double y) {
    lo_x_ = std::min(lo_x_, x);
    hi_x_ = std::max(hi_x_, x);
    lo_y_ = std::min(lo_y_, y);
    hi_y_ = std::max(hi_y_, y);
  }

  void finalize() {
    if (!(hi_x_ >= lo_x_)) lo_x_ = lo_y_ = -1, hi_x_ = hi_y_ = 1;
    const double pad = 0.08 * std::max({hi_x_ - lo_x_, hi_y_ - lo_y_, 1e-9});
    lo_x_ -= pad;
    hi_x_ += pad;
    lo_y_ -= pad;
    hi_y_ += pad;
    scale_ = 640.0 / std::max(hi_x_ - lo_x_, hi_y_ - lo_y_);
  }

  double sx(double x) const { return (x - lo_x_) * scale_; }
  double sy(double y) const { return (hi_y_ - y) * scale_; }
  double width() const { return (hi_x_ - lo_x_) * scale_; }
  double height() const { return (hi_y_ - lo_y_) * scale_; }
  double lo_x() const { return lo_x_; }
  double hi_x() const { return hi_x_; }
  double lo_y() const { return lo_y_; }
  double hi_y() const { return hi_y_; }
  double scale() const { return scale_; }

 private:
  double lo_x_ = std::numeric_limits<double>::infinity();
  double hi_x_ = -std::numeric_limits<double>::infinity();
  double lo_y_ = std::numeric_limits<double>::infinity();
  double hi_y_ = -std::numeric_limits<double>::infinity();
  double scale_ = 1.0;
};

inline const char* palette(size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
  return colors[i % 7];
}

// Clips {x : x . nrm = off} to the canvas box; false when it misses.
inline bool clip_line(const SvgCanvas& c, const Vec& nrm, double off, double out[4]) {
  std::vector<std::pair<double, double>> hits;
  const double a = nrm(0);
  const double b = nrm(1);
  if (std::abs(b) > 1e-12) {
    for (double x : {c.lo_x(), c.hi_x()}) {
      const double y = (off - a * x) / b;
      if (y >= c.lo_y() - 1e-9 && y <= c.hi_y() + 1e-9) hits.emplace_back(x, y);
    }
  }
  if (std::abs(a) > 1e-12) {
    for (double y : {c.lo_y(), c.hi_y()}) {
      const double x = (off - b * y) / a;
      if (x >= c.lo_x() - 1e-9 && x <= c.hi_x() + 1e-9) hits.emplace_back(x, y);
    }
  }
  if (hits.size() < 2) return false;
  out[0] = hits[0].first;
  out[1] = hits[0].second;
  out[2] = hits.back().first;
  out[3] = hits.back().second;
  return true;
}

}  // namespace detail

/// Draws sets, measures, points and sphere covers, then the certified object
/// of `cert` when one is given.
inline std::string render_svg(const Instance& in, const json& cert = nullptr) {
  using detail::palette;
  detail::SvgCanvas canvas;
  const bool sphere = !in.cover.empty();
  auto xy = [](const Mat& m, Eigen::Index j) { return std::pair<double, double>(m(0, j), m.rows() > 1 ? m(1, j) : 0.0); };

  std::vector<std::pair<CompactSet, size_t>> shapes;
  for (size_t i = 0; i < in.sets.size(); ++i) shapes.emplace_back(in.sets[i], i);
  for (size_t f = 0; f < in.families.size(); ++f) {
    for (const auto& s : in.families[f]) shapes.emplace_back(s, f);
  }
  for (const auto& [s, color] : shapes) {
    const Mat v = s.vertices();
    for (Eigen::Index j = 0; j < v.cols(); ++j) canvas.include(xy(v, j).first, xy(v, j).second);
  }
  for (const auto& m : in.measures) {
    for (Eigen::Index j = 0; j < m.size(); ++j) canvas.include(xy(m.points(), j).first, xy(m.points(), j).second);
  }
  if (in.points) {
    for (Eigen::Index j = 0; j < in.points->cols(); ++j) canvas.include(xy(*in.points, j).first, xy(*in.points, j).second);
  }
  if (sphere) {
    canvas.include(-1.2, -1.2);
    canvas.include(1.2, 1.2);
  }
  canvas.finalize();

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas.width() << "\" height=\"" << canvas.height()
      << "\" viewBox=\"0 0 " << canvas.width() << ' ' << canvas.height() << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (in.dimension == 3) {
    svg << "<text x=\"8\" y=\"18\" font-size=\"13\" fill=\"#444\">projected sketch (x, y); not authoritative</text>\n";
  }
  for (const auto& [s, color] : shapes) {
    for (const auto& piece : s.pieces()) {
      std::vector<oracle::P2> pts;
      for (Eigen::Index j = 0; j < piece.cols(); ++j) pts.emplace_back(xy(piece, j).first, xy(piece, j).second);
      const auto hull = oracle::hull_2d(pts);
      svg << "<polygon fill=\"" << palette(color) << "\" fill-opacity=\"0.25\" stroke=\"" << palette(color)
          << "\" points=\"";
      for (const auto& p : hull) svg << canvas.sx(p.x()) << ',' << canvas.sy(p.y()) << ' ';
      svg << "\"/>\n";
    }
  }
  for (size_t i = 0; i < in.measures.size(); ++i) {
    const auto& m = in.measures[i];
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      const double r = 2.5 * std::sqrt(m.weights()(j) * m.size());
      svg << "<circle cx=\"" << canvas.sx(xy(m.points(), j).first) << "\" cy=\"" << canvas.sy(xy(m.points(), j).second)
          << "\" r=\"" << r << "\" fill=\"" << palette(i) << "\"/>\n";
    }
  }
  if (in.points) {
    for (Eigen::Index j = 0; j < in.points->cols(); ++j) {
      svg << "<circle cx=\"" << canvas.sx(xy(*in.points, j).first) << "\" cy=\"" << canvas.sy(xy(*in.points, j).second)
          << "\" r=\"3\" fill=\"black\"/>\n";
    }
  }
  if (sphere) {
    svg << "<circle cx=\"" << canvas.sx(0) << "\" cy=\"" << canvas.sy(0) << "\" r=\"" << canvas.scale()
        << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
    for (size_t i = 0; i < in.cover.size(); ++i) {
      for (const auto& cap : in.cover[i].set.caps()) {
        const double rad = 1.0 + 0.04 * static_cast<double>(i + 1);
        const double mid = std::atan2(cap.center.size() > 1 ? cap.center(1) : 0.0, cap.center(0));
        const double a0 = mid - cap.radius;
        const double a1 = mid + cap.radius;
        svg << "<path fill=\"none\" stroke-width=\"3\" stroke=\"" << palette(i) << "\" d=\"M "
            << canvas.sx(rad * std::cos(a0)) << ' ' << canvas.sy(rad * std::sin(a0)) << " A " << rad * canvas.scale()
            << ' ' << rad * canvas.scale() << " 0 " << (a1 - a0 > kPi ? 1 : 0) << " 0 "
            << canvas.sx(rad * std::cos(a1)) << ' ' << canvas.sy(rad * std::sin(a1)) << "\"/>\n";
      }
    }
  }

  if (cert.is_object() && cert.contains("object")) {
    const json& obj = cert["object"];
    auto line = [&](const Vec& nrm, double off, const char* color) {
      double seg[4];
      if (nrm.size() >= 2 && detail::clip_line(canvas, nrm, off, seg)) {
        svg << "<line x1=\"" << canvas.sx(seg[0]) << "\" y1=\"" << canvas.sy(seg[1]) << "\" x2=\"" << canvas.sx(seg[2])
            << "\" y2=\"" << canvas.sy(seg[3]) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
      }
    };
    if (obj.contains("hyperplane")) {
      const auto& h = obj["hyperplane"];
      line(detail::vector(h["normal"], "/object/hyperplane/normal", 0), h["offset"].get<double>(), "black");
    }
    if (obj.contains("flat")) {
      const Vec base = detail::vector(obj["flat"]["base"], "/object/flat/base", 0);
      if (obj["flat"]["basis"].size() == 1 && base.size() >= 2) {
        const Vec d = detail::vector(obj["flat"]["basis"][0], "/object/flat/basis/0", 0);
        const Vec nrm = vec({-d(1), d(0)});
        line(nrm, nrm.dot(base.head(2)), "black");
      } else if (base.size() >= 2) {
        svg << "<circle cx=\"" << canvas.sx(base(0)) << "\" cy=\"" << canvas.sy(base(1))
            << "\" r=\"4\" fill=\"black\"/>\n";
      }
    }
    if (obj.contains("u") && in.points) {
      const Vec u = detail::vector(obj["u"], "/object/u", 0);
      const Eigen::RowVectorXd v = u.transpose() * *in.points;
      line(u, v.maxCoeff(), "black");
      line(u, v.minCoeff(), "black");
    }
    if (obj.contains("x") && sphere) {
      const Vec x = detail::vector(obj["x"], "/object/x", 0);
      for (double s : {1.0, -1.0}) {
        svg << "<circle cx=\"" << canvas.sx(s * x(0)) << "\" cy=\"" << canvas.sy(s * x(1)) << "\" r=\"5\" fill=\""
            << (s > 0 ? "black" : "white") << "\" stroke=\"black\"/>\n";
      }
    }
    if (obj.contains("basis") && sphere) {
      const Vec pole = detail::vector(obj["basis"][0], "/object/basis/0", 0);
      svg << "<line x1=\"" << canvas.sx(0) << "\" y1=\"" << canvas.sy(0) << "\" x2=\"" << canvas.sx(pole(0))
          << "\" y2=\"" << canvas.sy(pole(1)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace flatcert::cli
