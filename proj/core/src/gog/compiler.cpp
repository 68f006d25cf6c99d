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

#include "dvp/gog/compiler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "dvp/error.hpp"
#include "dvp/gog/parser.hpp"

namespace dvp::gog {

std::string_view to_string(Geom geom) {
  switch (geom) {
    case Geom::kPoint: return "point";
    case Geom::kContour: return "contour";
    case Geom::kPolyline: return "polyline";
  }
  return "geom";
}

std::string_view to_string(Aesthetic aesthetic) {
  switch (aesthetic) {
    case Aesthetic::kPosition: return "position";
    case Aesthetic::kSize: return "size";
    case Aesthetic::kLabel: return "label";
    case Aesthetic::kColor: return "color";
  }
  return "aesthetic";
}

namespace {

constexpr std::string_view kDensityPath = "smooth.density.kernel.epanechnikov.joint";

bool is_builtin(const std::string& name) {
  return name == "zero" || name == "dim" || name == "hue";
}

[[noreturn]] void compile_error(const std::string& message) {
  throw Error(ErrorKind::kCompile, message);
}

class Compiler {
 public:
  explicit Compiler(const DataSource& data) : data_(data) {
    scene_.data_ref = data.id();
  }

  SceneGraph run(const std::vector<GogStatement>& statements) {
    for (const auto& statement : statements) {
      if (statement.kind == StatementKind::kElement) {
        scene_.elements.push_back(element(statement.call));
      } else {
        scene_.guides.push_back(guide(statement.call));
      }
    }
    scene_.x_domain = domain(x_columns_);
    scene_.y_domain = domain(y_columns_);
    return std::move(scene_);
  }

 private:
  const Column& column(const std::string& name) {
    auto index = data_.column_index(name);
    if (!index) compile_error("unknown column " + name);
    return data_.column(*index);
  }

  const Column& quantitative(const std::string& name, std::string_view role) {
    const Column& c = column(name);
    if (!c.type().is_quantitative()) {
      compile_error("type error: column " + name + " is " +
                    std::string(to_string(c.type().kind())) + " and cannot be bound to " +
                    std::string(role));
    }
    return c;
  }

  std::pair<std::string, std::string> cross_columns(const Expr& expr, std::string_view role) {
    const auto* cross = expr.as<CrossExpr>();
    if (!cross) compile_error(std::string(role) + " expects a cross of two columns (a*b)");
    const auto* a = cross->left->as<Identifier>();
    const auto* b = cross->right->as<Identifier>();
    if (!a || !b) compile_error(std::string(role) + " operands must be column names");
    for (const auto* id : {a, b}) {
      if (is_builtin(id->name)) compile_error("builtin " + id->name + " cannot be a position");
      quantitative(id->name, role);
    }
    return {a->name, b->name};
  }

  GeomElement element(const CallExpr& call) {
    GeomElement el;
    const std::string name = call.dotted();
    if (name == "point") {
      el.geom = Geom::kPoint;
    } else if (name == "contour") {
      el.geom = Geom::kContour;
    } else if (name == "line" || name == "polyline") {
      el.geom = Geom::kPolyline;
    } else {
      compile_error("unknown geometry " + name);
    }

    const CallExpr* position = nullptr;
    const CallExpr* size = nullptr;
    const CallExpr* label = nullptr;
    const CallExpr* color = nullptr;
    for (const auto& arg : call.args) {
      const auto* aes = arg.as<CallExpr>();
      if (!aes) compile_error("element arguments must be aesthetics such as position(...)");
      const std::string& head = aes->head();
      const CallExpr** slot = nullptr;
      if (head == "position" && aes->path.size() == 1) {
        slot = &position;
      } else if (head == "size" && aes->path.size() == 1) {
        slot = &size;
      } else if (head == "label" && aes->path.size() == 1) {
        slot = &label;
      } else if (head == "color") {
        slot = &color;
      } else {
        compile_error("unknown aesthetic " + aes->dotted());
      }
      if (*slot) compile_error("duplicate aesthetic " + head + " in " + name);
      *slot = aes;
    }
    if (!position) compile_error("element " + name + " needs exactly one position binding");
    if (position->args.size() != 1) compile_error("position takes exactly one argument");

    if (el.geom == Geom::kContour) {
      contour_position(el, position->args.front());
    } else {
      mark_position(el, position->args.front());
    }
    if (size) apply_size(el, *size);
    if (label) apply_label(el, *label);
    if (color) apply_color(el, *color);
    return el;
  }

  void note_dims(const std::string& x, const std::string& y) {
    if (scene_.x_dim.empty()) {
      scene_.x_dim = x;
      scene_.y_dim = y;
    }
    x_columns_.insert(x);
    y_columns_.insert(y);
  }

  void mark_position(GeomElement& el, const Expr& arg) {
    if (arg.as<CallExpr>()) {
      compile_error("geometry " + std::string(to_string(el.geom)) +
                    " does not take a statistic in position");
    }
    auto [xname, yname] = cross_columns(arg, "position");
    el.aesthetics[Aesthetic::kPosition] = {to_source(arg), {xname, yname}};
    note_dims(xname, yname);
    const Column& xc = column(xname);
    const Column& yc = column(yname);
    el.marks.reserve(data_.rows());
    for (std::size_t r = 0; r < data_.rows(); ++r) {
      Mark mark;
      mark.row = r;
      mark.x = xc.values()[r];
      mark.y = yc.values()[r];
      mark.present = !std::isnan(mark.x) && !std::isnan(mark.y);
      el.marks.push_back(mark);
    }
  }

  void contour_position(GeomElement& el, const Expr& arg) {
    const auto* stat = arg.as<CallExpr>();
    if (!stat || stat->dotted() != kDensityPath) {
      compile_error("contour position must be " + std::string(kDensityPath) + "(a*b)");
    }
    if (stat->args.empty() || stat->args.size() > 2) {
      compile_error(std::string(kDensityPath) + " takes a cross and an optional bandwidth");
    }
    auto [xname, yname] = cross_columns(stat->args[0], "density");
    el.aesthetics[Aesthetic::kPosition] = {to_source(arg), {xname, yname}};
    note_dims(xname, yname);

    double hx = 0.0;
    double hy = 0.0;
    if (stat->args.size() == 2) {
      const auto* bw = stat->args[1].as<TupleLit>();
      if (!bw || !(bw->first > 0.0) || !(bw->second > 0.0)) {
        compile_error("density bandwidth must be a positive pair (hx,hy)");
      }
      hx = bw->first;
      hy = bw->second;
    }

    const Column& xc = column(xname);
    const Column& yc = column(yname);
    std::vector<stats::Point2> points;
    for (std::size_t r = 0; r < data_.rows(); ++r) {
      double x = xc.values()[r];
      double y = yc.values()[r];
      if (!std::isnan(x) && !std::isnan(y)) points.push_back({x, y});
    }
    if (points.empty()) {
      throw Error(ErrorKind::kKde, "density over " + xname + "*" + yname + " has no complete rows");
    }
    auto plan = stats::default_kde_plan(points, hx, hy);
    auto grid = stats::epanechnikov_kde_2d(points, plan.spec, plan.x, plan.y);
    auto levels = stats::default_levels(grid);
    ContourPayload payload;
    payload.spec = plan.spec;
    payload.x = plan.x;
    payload.y = plan.y;
    payload.levels = stats::extract_contours(grid, levels);
    el.contours = std::move(payload);
  }

  void apply_size(GeomElement& el, const CallExpr& size) {
    if (size.args.size() != 1) compile_error("size takes exactly one argument");
    const Expr& arg = size.args.front();
    el.aesthetics[Aesthetic::kSize] = {to_source(arg), {}};
    double radius = kDefaultMarkRadius;
    if (const auto* id = arg.as<Identifier>()) {
      if (id->name == "zero") {
        radius = kMinMarkRadius;
      } else if (is_builtin(id->name)) {
        compile_error("builtin " + id->name + " cannot be a size");
      } else {
        const Column& c = quantitative(id->name, "size");
        el.aesthetics[Aesthetic::kSize].columns = {id->name};
        auto [lo, hi] = value_range(c);
        for (auto& mark : el.marks) {
          double v = c.values()[mark.row];
          double t = std::isnan(v) || hi == lo ? 0.5 : (v - lo) / (hi - lo);
          mark.radius = kMinMarkRadius + t * (kMaxMarkRadius - kMinMarkRadius);
        }
        return;
      }
    } else if (const auto* num = arg.as<NumberLit>()) {
      if (num->value < 0.0) compile_error("size must be non-negative");
      radius = std::max(num->value, kMinMarkRadius);
    } else {
      compile_error("size expects zero, a number, or a column");
    }
    for (auto& mark : el.marks) mark.radius = radius;
  }

  void apply_label(GeomElement& el, const CallExpr& label) {
    if (label.args.size() != 1) compile_error("label takes exactly one argument");
    const Expr& arg = label.args.front();
    el.aesthetics[Aesthetic::kLabel] = {to_source(arg), {}};
    if (const auto* text = arg.as<StringLit>()) {
      for (auto& mark : el.marks) mark.label = text->value;
      return;
    }
    const auto* id = arg.as<Identifier>();
    if (!id || is_builtin(id->name)) compile_error("label expects a string or a column");
    const Column& c = column(id->name);
    el.aesthetics[Aesthetic::kLabel].columns = {id->name};
    for (auto& mark : el.marks) {
      Cell cell = c.cell(mark.row);
      if (const auto* s = std::get_if<std::string>(&cell)) {
        mark.label = *s;
      } else if (const auto* d = std::get_if<double>(&cell)) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *d);
        mark.label = std::string(buf, ptr);
      }
    }
  }

  void apply_color(GeomElement& el, const CallExpr& color) {
    const std::string name = color.dotted();
    const bool hue_scale =
        name == "color.hue" ||
        (name == "color" && color.args.size() == 1 && color.args[0].as<Identifier>() &&
         color.args[0].as<Identifier>()->name == "hue");
    if (hue_scale && (name == "color" || color.args.empty())) {
      el.aesthetics[Aesthetic::kColor] = {name + "()", {}};
      if (el.contours) {
        const std::size_t count = el.contours->levels.size();
        for (std::size_t k = 0; k < count; ++k) {
          el.contours->hues.push_back(360.0 * static_cast<double>(k) / static_cast<double>(count));
        }
      } else {
        for (auto& mark : el.marks) mark.hue = 0.0;
      }
      return;
    }
    if (name != "color" || color.args.size() != 1) {
      compile_error("unknown color mapping " + name);
    }
    const auto* id = color.args[0].as<Identifier>();
    if (!id || is_builtin(id->name)) compile_error("color expects a column or hue()");
    if (el.geom == Geom::kContour) compile_error("contour color must be color.hue()");
    const Column& c = column(id->name);
    el.aesthetics[Aesthetic::kColor] = {id->name, {id->name}};
    if (c.type().is_quantitative()) {
      auto [lo, hi] = value_range(c);
      for (auto& mark : el.marks) {
        double v = c.values()[mark.row];
        if (std::isnan(v)) continue;
        double t = hi == lo ? 0.0 : (v - lo) / (hi - lo);
        mark.hue = 240.0 * t;
      }
      return;
    }
    std::vector<std::string> categories;
    if (c.type().kind() == ColumnType::Kind::kOrderedCategorical) {
      categories = c.type().order();
    } else {
      std::set<std::string> distinct;
      for (const auto& label : c.labels()) {
        if (label) distinct.insert(*label);
      }
      categories.assign(distinct.begin(), distinct.end());
    }
    for (auto& mark : el.marks) {
      const auto& label = c.labels()[mark.row];
      if (!label) continue;
      auto it = std::find(categories.begin(), categories.end(), *label);
      mark.hue = 360.0 * static_cast<double>(it - categories.begin()) /
                 static_cast<double>(categories.size());
    }
  }

  Guide guide(const CallExpr& call) {
    Guide g;
    const std::string name = call.dotted();
    if (name == "axis") {
      g.guide = GuideKind::kAxis;
    } else if (name == "form.line") {
      g.guide = GuideKind::kFormLine;
    } else {
      compile_error("unknown guide " + name);
    }
    bool have_geometry = false;
    for (const auto& arg : call.args) {
      const auto* param = arg.as<CallExpr>();
      if (!param) compile_error("guide arguments must be calls such as label(...)");
      const std::string pname = param->dotted();
      if (pname == "label") {
        if (param->args.size() != 1 || !param->args[0].as<StringLit>()) {
          compile_error("guide label expects one string");
        }
        g.label = param->args[0].as<StringLit>()->value;
      } else if (pname == "dim" && g.guide == GuideKind::kAxis) {
        const NumberLit* n = param->args.size() == 1 ? param->args[0].as<NumberLit>() : nullptr;
        if (!n || (n->value != 1.0 && n->value != 2.0)) {
          compile_error("axis dim must be 1 or 2");
        }
        g.dim = static_cast<int>(n->value);
        have_geometry = true;
      } else if (pname == "position" && g.guide == GuideKind::kFormLine) {
        const TupleLit* a = param->args.size() == 2 ? param->args[0].as<TupleLit>() : nullptr;
        const TupleLit* b = param->args.size() == 2 ? param->args[1].as<TupleLit>() : nullptr;
        if (!a || !b) compile_error("form.line position expects two points (x,y),(x,y)");
        g.endpoints = {stats::Point2{a->first, a->second}, stats::Point2{b->first, b->second}};
        have_geometry = true;
      } else {
        compile_error("unknown parameter " + pname + " for guide " + name);
      }
    }
    if (!have_geometry) {
      compile_error(g.guide == GuideKind::kAxis ? "axis needs dim(1) or dim(2)"
                                                : "form.line needs position((x,y),(x,y))");
    }
    return g;
  }

  static std::optional<std::pair<double, double>> present_range(const Column& c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : c.values()) {
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo > hi) return std::nullopt;
    return std::pair{lo, hi};
  }

  static std::pair<double, double> value_range(const Column& c) {
    return present_range(c).value_or(std::pair{0.0, 0.0});
  }

  stats::Range domain(const std::set<std::string>& columns) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& name : columns) {
      auto range = present_range(data_.column(name));
      if (!range) continue;
      lo = std::min(lo, range->first);
      hi = std::max(hi, range->second);
    }
    if (lo > hi) return {0.0, 1.0};
    if (lo == hi) return {lo - 0.5, hi + 0.5};
    return {lo, hi};
  }

  const DataSource& data_;
  SceneGraph scene_;
  std::set<std::string> x_columns_;
  std::set<std::string> y_columns_;
};

}  // namespace

SceneGraph compile(const std::vector<GogStatement>& statements, const DataSource& data) {
  return Compiler(data).run(statements);
}

SceneGraph compile_script(std::string_view source, const DataSource& data) {
  return compile(parse(source), data);
}

}  // namespace dvp::gog
