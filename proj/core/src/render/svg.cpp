// Copyright 2026 The DVP Authors.
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

#include "dvp/render/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "dvp/error.hpp"

namespace dvp::render {
namespace {

std::string num(double v) {
  if (!std::isfinite(v)) v = 0.0;
  char buffer[48];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v, std::chars_format::fixed, 2);
  std::string out(buffer, ptr);
  if (out == "-0.00") out = "0.00";
  return out;
}

std::string alpha_text(double a) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, a, std::chars_format::fixed, 3);
  return std::string(buffer, ptr);
}

/// HSL(h, 65%, 45%) to hex.
std::string hue_color(double hue) {
  const double s = 0.65;
  const double l = 0.45;
  const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
  const double hp = std::fmod(std::fmod(hue, 360.0) + 360.0, 360.0) / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else { r = c; b = x; }
  const double m = l - c / 2.0;
  auto byte = [&](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround((v + m) * 255.0), 0L, 255L));
  };
  return Rgb{byte(r), byte(g), byte(b)}.hex();
}

void check_size(CanvasSize size) {
  if (size.width <= 0 || size.height <= 0) {
    throw Error(ErrorKind::kRender, "canvas size must be positive, got " +
                                        std::to_string(size.width) + "x" +
                                        std::to_string(size.height));
  }
}

void open_svg(std::string& out, CanvasSize size) {
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(size.width) + "\" height=\"" + std::to_string(size.height) +
         "\" viewBox=\"0 0 " + std::to_string(size.width) + " " + std::to_string(size.height) +
         "\">\n";
  out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + std::to_string(size.width) +
         "\" height=\"" + std::to_string(size.height) + "\" fill=\"#ffffff\"/>\n";
}

struct PlotArea {
  double left;
  double right;
  double top;
  double bottom;
};

PlotArea plot_area(CanvasSize size) {
  PlotArea area{static_cast<double>(kMargin), static_cast<double>(size.width - kMargin),
                static_cast<double>(kMargin), static_cast<double>(size.height - kMargin)};
  if (area.right <= area.left) area.right = area.left + 1.0;
  if (area.bottom <= area.top) area.bottom = area.top + 1.0;
  return area;
}

class SceneScale {
 public:
  SceneScale(const gog::SceneGraph& scene, PlotArea area) : scene_(scene), area_(area) {}
  double x(double v) const {
    const auto& d = scene_.x_domain;
    return area_.left + (v - d.lo) / (d.hi - d.lo) * (area_.right - area_.left);
  }
  double y(double v) const {
    const auto& d = scene_.y_domain;
    return area_.bottom - (v - d.lo) / (d.hi - d.lo) * (area_.bottom - area_.top);
  }

 private:
  const gog::SceneGraph& scene_;
  PlotArea area_;
};

void render_axis(std::string& out, const gog::Guide& guide, const gog::SceneGraph& scene,
                 const SceneScale& scale, PlotArea area) {
  const bool horizontal = guide.dim == 1;
  const auto& domain = horizontal ? scene.x_domain : scene.y_domain;
  out += "<g class=\"guide axis\" data-dim=\"" + std::to_string(guide.dim) + "\">\n";
  if (horizontal) {
    out += "<line class=\"axis\" x1=\"" + num(area.left) + "\" y1=\"" + num(area.bottom) +
           "\" x2=\"" + num(area.right) + "\" y2=\"" + num(area.bottom) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  } else {
    out += "<line class=\"axis\" x1=\"" + num(area.left) + "\" y1=\"" + num(area.top) +
           "\" x2=\"" + num(area.left) + "\" y2=\"" + num(area.bottom) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
  constexpr int kTicks = 5;
  for (int k = 0; k < kTicks; ++k) {
    const double v = domain.lo + (domain.hi - domain.lo) * k / (kTicks - 1);
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v, std::chars_format::general, 4);
    const std::string text(buffer, ptr);
    if (horizontal) {
      const double px = scale.x(v);
      out += "<line class=\"tick\" x1=\"" + num(px) + "\" y1=\"" + num(area.bottom) +
             "\" x2=\"" + num(px) + "\" y2=\"" + num(area.bottom + 4) +
             "\" stroke=\"#000000\"/>\n";
      out += "<text class=\"tick-label\" x=\"" + num(px) + "\" y=\"" + num(area.bottom + 14) +
             "\" font-size=\"9\" text-anchor=\"middle\">" + xml_escape(text) + "</text>\n";
    } else {
      const double py = scale.y(v);
      out += "<line class=\"tick\" x1=\"" + num(area.left - 4) + "\" y1=\"" + num(py) +
             "\" x2=\"" + num(area.left) + "\" y2=\"" + num(py) + "\" stroke=\"#000000\"/>\n";
      out += "<text class=\"tick-label\" x=\"" + num(area.left - 6) + "\" y=\"" + num(py + 3) +
             "\" font-size=\"9\" text-anchor=\"end\">" + xml_escape(text) + "</text>\n";
    }
  }
  if (!guide.label.empty()) {
    if (horizontal) {
      out += "<text class=\"axis-label\" x=\"" + num((area.left + area.right) / 2) + "\" y=\"" +
             num(area.bottom + 30) + "\" font-size=\"12\" text-anchor=\"middle\">" +
             xml_escape(guide.label) + "</text>\n";
    } else {
      const double cy = (area.top + area.bottom) / 2;
      out += "<text class=\"axis-label\" x=\"12.00\" y=\"" + num(cy) +
             "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 12.00 " +
             num(cy) + ")\">" + xml_escape(guide.label) + "</text>\n";
    }
  }
  out += "</g>\n";
}

void render_form_line(std::string& out, const gog::Guide& guide, const SceneScale& scale) {
  const auto& [a, b] = guide.endpoints;
  out += "<g class=\"guide form-line\">\n";
  out += "<line class=\"guide-line\" x1=\"" + num(scale.x(a.x)) + "\" y1=\"" + num(scale.y(a.y)) +
         "\" x2=\"" + num(scale.x(b.x)) + "\" y2=\"" + num(scale.y(b.y)) +
         "\" stroke=\"#333333\" stroke-dasharray=\"4 3\" clip-path=\"url(#plot-area)\"/>\n";
  if (!guide.label.empty()) {
    out += "<text class=\"guide-label\" x=\"" + num(scale.x(b.x)) + "\" y=\"" +
           num(scale.y(b.y) - 4) + "\" font-size=\"10\" text-anchor=\"end\">" +
           xml_escape(guide.label) + "</text>\n";
  }
  out += "</g>\n";
}

const SelectionGroup* top_group(std::span<const SelectionGroup* const> groups, std::size_t row) {
  const SelectionGroup* best = nullptr;
  for (const SelectionGroup* g : groups) {
    if (g->rows.contains(row) && (!best || g->z >= best->z)) best = g;
  }
  return best;
}

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_scene(const gog::SceneGraph& scene, CanvasSize size,
                         std::span<const SelectionGroup> groups) {
  check_size(size);
  const PlotArea area = plot_area(size);
  const SceneScale scale(scene, area);

  std::vector<const SelectionGroup*> linked;
  for (const auto& g : groups) {
    if (g.source == scene.data_ref) linked.push_back(&g);
  }

  std::string out;
  open_svg(out, size);
  out += "<defs><clipPath id=\"plot-area\"><rect x=\"" + num(area.left) + "\" y=\"" +
         num(area.top) + "\" width=\"" + num(area.right - area.left) + "\" height=\"" +
         num(area.bottom - area.top) + "\"/></clipPath></defs>\n";

  for (std::size_t e = 0; e < scene.elements.size(); ++e) {
    const auto& el = scene.elements[e];
    out += "<g class=\"element " + std::string(gog::to_string(el.geom)) + "\" data-index=\"" +
           std::to_string(e) + "\">\n";
    if (el.geom == gog::Geom::kContour && el.contours) {
      const auto& payload = *el.contours;
      for (std::size_t k = 0; k < payload.levels.size(); ++k) {
        const auto& level = payload.levels[k];
        const std::string stroke =
            k < payload.hues.size() ? hue_color(payload.hues[k]) : std::string("#4d4d4d");
        for (const auto& line : level.lines) {
          out += "<path class=\"contour\" data-level=\"" + std::to_string(k) + "\" d=\"";
          for (std::size_t i = 0; i < line.vertices.size(); ++i) {
            out += i == 0 ? "M" : " L";
            out += num(scale.x(line.vertices[i].x)) + "," + num(scale.y(line.vertices[i].y));
          }
          if (line.closed) out += " Z";
          out += "\" fill=\"none\" stroke=\"" + stroke +
                 "\" stroke-width=\"1\" clip-path=\"url(#plot-area)\"/>\n";
        }
      }
    } else if (el.geom == gog::Geom::kPolyline) {
      std::string points;
      for (const auto& mark : el.marks) {
        if (!mark.present) continue;
        if (!points.empty()) points += ' ';
        points += num(scale.x(mark.x)) + "," + num(scale.y(mark.y));
      }
      out += "<polyline class=\"geom-line\" points=\"" + points +
             "\" fill=\"none\" stroke=\"#4d4d4d\" stroke-width=\"1\"/>\n";
    } else {
      for (const auto& mark : el.marks) {
        if (!mark.present) continue;
        std::string fill = kNeutralGray;
        double alpha = 1.0;
        if (const SelectionGroup* g = top_group(linked, mark.row)) {
          fill = g->color.hex();
          alpha = g->alpha;
        } else if (mark.hue) {
          fill = hue_color(*mark.hue);
        }
        const double cx = scale.x(mark.x);
        const double cy = scale.y(mark.y);
        out += "<circle class=\"mark\" data-row=\"" + std::to_string(mark.row) + "\" cx=\"" +
               num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(mark.radius) + "\" fill=\"" +
               fill + "\" fill-opacity=\"" + alpha_text(alpha) + "\"/>\n";
        if (mark.label) {
          out += "<text class=\"mark-label\" x=\"" + num(cx + mark.radius + 2) + "\" y=\"" +
                 num(cy + 3) + "\" font-size=\"8\">" + xml_escape(*mark.label) + "</text>\n";
        }
      }
    }
    out += "</g>\n";
  }

  for (const auto& guide : scene.guides) {
    if (guide.guide == gog::GuideKind::kAxis) {
      render_axis(out, guide, scene, scale, area);
    } else {
      render_form_line(out, guide, scale);
    }
  }
  out += "</svg>\n";
  return out;
}

std::string render_parcoords(const parcoords::AxisLayout& layout, const DataSource& data,
                             std::span<const SelectionGroup> groups, CanvasSize size) {
  check_size(size);
  const PlotArea area = plot_area(size);
  const std::size_t p = layout.size();
  const double span = p > 1 ? layout.x_of(p - 1) : 1.0;

  std::vector<double> axis_px(p);
  for (std::size_t i = 0; i < p; ++i) {
    axis_px[i] = p > 1 ? area.left + layout.x_of(i) / span * (area.right - area.left)
                       : (area.left + area.right) / 2.0;
  }
  auto y_px = [&](double normalized) {
    return area.bottom - normalized * (area.bottom - area.top);
  };

  std::vector<std::span<const double>> values(p);
  for (std::size_t i = 0; i < p; ++i) values[i] = data.column(layout.columns()[i]).values();

  std::vector<const SelectionGroup*> linked;
  for (const auto& g : groups) {
    if (g.source == data.id()) linked.push_back(&g);
  }
  std::stable_sort(linked.begin(), linked.end(),
                   [](const SelectionGroup* a, const SelectionGroup* b) { return a->z < b->z; });

  auto emit_row = [&](std::string& out, std::size_t row, const std::string& attrs) {
    std::string points;
    bool broken = false;
    std::vector<std::string> runs;
    for (std::size_t i = 0; i < p; ++i) {
      const double v = values[i][row];
      if (std::isnan(v)) {
        broken = true;
        if (!points.empty()) runs.push_back(std::move(points));
        points.clear();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += num(axis_px[i]) + "," + num(y_px(layout.normalize(i, v)));
    }
    if (!points.empty()) runs.push_back(std::move(points));
    const char* cls = broken ? "row-fragment" : "row";
    for (const auto& run : runs) {
      if (broken && run.find(' ') == std::string::npos) continue;  // single vertex
      out += "<polyline class=\"";
      out += cls;
      out += "\" data-row=\"" + std::to_string(row) + "\" points=\"" + run + "\" " + attrs +
             "/>\n";
    }
  };

  std::string out;
  out.reserve(256 + data.rows() * p * 16);
  open_svg(out, size);

  out += "<g class=\"axes\">\n";
  for (std::size_t i = 0; i < p; ++i) {
    out += "<line class=\"axis\" data-axis=\"" + std::to_string(i) + "\" x1=\"" +
           num(axis_px[i]) + "\" y1=\"" + num(area.top) + "\" x2=\"" + num(axis_px[i]) +
           "\" y2=\"" + num(area.bottom) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    out += "<text class=\"axis-label\" x=\"" + num(axis_px[i]) + "\" y=\"" +
           num(area.top - 8) + "\" font-size=\"11\" text-anchor=\"middle\">" +
           xml_escape(layout.axes()[i]) + "</text>\n";
  }
  out += "</g>\n";

  std::vector<bool> grouped(data.rows(), false);
  for (const SelectionGroup* g : linked) {
    for (std::size_t r : g->rows) {
      if (r < grouped.size()) grouped[r] = true;
    }
  }

  const std::string base_attrs =
      std::string("fill=\"none\" stroke=\"") + kNeutralGray + "\" stroke-opacity=\"0.300\"";
  out += "<g class=\"rows\">\n";
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (!grouped[r]) emit_row(out, r, base_attrs);
  }
  out += "</g>\n";

  for (const SelectionGroup* g : linked) {
    out += "<g class=\"group\" data-group=\"" + std::to_string(g->id) + "\" data-name=\"" +
           xml_escape(g->name) + "\">\n";
    const std::string attrs = "fill=\"none\" stroke=\"" + g->color.hex() +
                              "\" stroke-opacity=\"" + alpha_text(g->alpha) + "\"";
    for (std::size_t r : g->rows) {
      if (r < data.rows()) emit_row(out, r, attrs);
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dvp::render
