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

#include "dvp/bridge/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "dvp/gog/compiler.hpp"
#include "dvp/parcoords/queries.hpp"
#include "dvp/wire.hpp"

namespace dvp::bridge {

using DataPtr = std::shared_ptr<const DataSource>;

Json variable_to_json(const Variable& value) {
  struct Visitor {
    Json operator()(const DataPtr& data) const { return datasource_to_json(*data); }
    Json operator()(double number) const { return Json(number); }
    Json operator()(const RowIndexSet& rows) const { return rows_to_json(rows); }
  };
  return std::visit(Visitor{}, value);
}

Variable variable_from_json(const Json& doc) {
  if (doc.is_number()) {
    const double number = doc.get<double>();
    if (!std::isfinite(number)) {
      throw SchemaError(ErrorKind::kType, "/payload", "number is not finite");
    }
    return number;
  }
  if (doc.is_object()) {
    if (doc.contains("indices")) return rows_from_json(doc, "/payload");
    if (looks_like_datasource(doc)) {
      return std::make_shared<const DataSource>(datasource_from_json(doc, "/payload"));
    }
  }
  throw SchemaError(ErrorKind::kType, "/payload",
                    std::string("expected a DataSource, a number or a row set, found ") +
                        doc.type_name());
}

Coordinator::Coordinator() : worker_([this] { loop(); }) {}

Coordinator::~Coordinator() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  ready_.notify_all();
  worker_.join();
}

void Coordinator::enqueue(std::function<void()> task) {
  {
    std::lock_guard lock(mutex_);
    tasks_.push_back(std::move(task));
  }
  ready_.notify_one();
}

void Coordinator::loop() {
  for (;;) {
    std::function<void()> task;
    {
      std::unique_lock lock(mutex_);
      ready_.wait(lock, [this] { return stopping_ || !tasks_.empty(); });
      if (tasks_.empty()) return;
      task = std::move(tasks_.front());
      tasks_.pop_front();
    }
    task();
  }
}

namespace {

std::string payload_path(std::string_view key) { return "/payload/" + std::string(key); }

const Json& field(const Json& payload, std::string_view key) {
  if (!payload.is_object()) {
    throw SchemaError(ErrorKind::kSchema, "/payload", "expected an object");
  }
  auto it = payload.find(key);
  if (it == payload.end()) {
    throw SchemaError(ErrorKind::kSchema, payload_path(key), "missing field");
  }
  return *it;
}

std::string string_at(const Json& payload, std::string_view key) {
  const Json& value = field(payload, key);
  if (!value.is_string()) {
    throw SchemaError(ErrorKind::kType, payload_path(key), "expected a string");
  }
  return value.get<std::string>();
}

double number_at(const Json& payload, std::string_view key) {
  const Json& value = field(payload, key);
  if (!value.is_number()) {
    throw SchemaError(ErrorKind::kType, payload_path(key), "expected a number");
  }
  return value.get<double>();
}

std::uint64_t id_at(const Json& payload, std::string_view key) {
  const Json& value = field(payload, key);
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  throw SchemaError(ErrorKind::kType, payload_path(key), "expected a non-negative integer");
}

bool has(const Json& payload, std::string_view key) {
  return payload.is_object() && payload.contains(key) && !payload.at(key).is_null();
}

std::string string_or(const Json& payload, std::string_view key, std::string fallback) {
  return has(payload, key) ? string_at(payload, key) : std::move(fallback);
}

std::optional<Rgb> color_at(const Json& payload) {
  if (!has(payload, "color")) return std::nullopt;
  return Rgb::from_hex(string_at(payload, "color"));
}

std::optional<double> alpha_at(const Json& payload) {
  if (!has(payload, "alpha")) return std::nullopt;
  return number_at(payload, "alpha");
}

render::CanvasSize size_at(const Json& payload, render::CanvasSize fallback) {
  if (has(payload, "width")) fallback.width = static_cast<int>(number_at(payload, "width"));
  if (has(payload, "height")) fallback.height = static_cast<int>(number_at(payload, "height"));
  return fallback;
}

std::string_view to_string(FigureKind kind) {
  return kind == FigureKind::kParcoords ? "parcoords" : "scene";
}

}  // namespace

struct Kernel::State {
  struct Figure {
    FigureId id = 0;
    FigureKind kind = FigureKind::kParcoords;
    std::string source;
    DataPtr data;
    std::unique_ptr<parcoords::ParcoordsView> view;
    std::string script;
    std::optional<gog::SceneGraph> scene;
    std::vector<DvpId> owners;
    render::CanvasSize size;
  };

  ClientHub* hub = nullptr;
  std::map<std::string, Variable> variables;
  std::map<FigureId, Figure> figures;
  LinkRegistry registry;

  DataPtr data_variable(const std::string& name) const {
    auto it = variables.find(name);
    if (it == variables.end()) {
      throw Error(ErrorKind::kUnbound, "unbound variable '" + name + "'");
    }
    if (const auto* data = std::get_if<DataPtr>(&it->second)) return *data;
    throw Error(ErrorKind::kType, "variable '" + name + "' is not a DataSource");
  }

  Figure& figure(FigureId id) {
    auto it = figures.find(id);
    if (it == figures.end()) {
      throw Error(ErrorKind::kInvalidArgument, "unknown figure " + std::to_string(id));
    }
    return it->second;
  }

  Figure& parcoords_figure(FigureId id) {
    Figure& f = figure(id);
    if (f.kind != FigureKind::kParcoords) {
      throw Error(ErrorKind::kQuery,
                  "figure " + std::to_string(id) + " is not a parallel-coordinates figure");
    }
    return f;
  }

  std::vector<SelectionGroup> visible(const Figure& f) const {
    std::vector<SelectionGroup> out;
    for (GroupId id : registry.visible_groups(f.id)) {
      if (const auto* g = registry.find_group(id)) out.push_back(*g);
    }
    return out;
  }

  std::string render(const Figure& f, render::CanvasSize size) const {
    const auto groups = visible(f);
    if (f.kind == FigureKind::kParcoords) {
      const auto model = f.view->snapshot();
      return render::render_parcoords(model->layout(), model->data(), groups, size);
    }
    return render::render_scene(*f.scene, size, groups);
  }

  Json describe(const Figure& f) const {
    Json doc{{"figureId", f.id},
             {"source", f.source},
             {"kind", std::string(to_string(f.kind))},
             {"rows", f.data->rows()}};
    if (f.kind == FigureKind::kParcoords) {
      const auto model = f.view->snapshot();
      Json ranges = Json::array();
      for (const auto& r : model->layout().ranges()) ranges.push_back({r.min, r.max});
      doc["axes"] = model->layout().axes();
      doc["ranges"] = std::move(ranges);
      doc["spacing"] = model->layout().spacing();
    } else {
      doc["script"] = f.script;
    }
    doc["svg"] = render(f, f.size);
    return doc;
  }

  /// Best effort: a closed stream does not fail the operation that triggered it.
  void notify(DvpId target, const std::string& command, const Json& payload) {
    try {
      hub->send(target, command, payload);
    } catch (const DeliveryError&) {
    }
  }

  std::string variable_for_source(const std::string& data_id) const {
    for (const auto& [name, value] : variables) {
      if (const auto* data = std::get_if<DataPtr>(&value); data && (*data)->id() == data_id) {
        return name;
      }
    }
    throw Error(ErrorKind::kSelection, "no variable holds source " + data_id);
  }

  Json apply_selection(DvpId sender, const std::string& source, RowIndexSet rows,
                       const std::string& name, std::optional<Rgb> color,
                       std::optional<double> alpha) {
    const DataPtr data = data_variable(source);
    if (const auto* old = registry.find_group(data->id(), name)) registry.delete_group(old->id);
    const SelectionGroup group =
        registry.create_group(*data, std::move(rows), name, color, alpha);
    variables[name] = group.rows;

    Json figures_notified = Json::array();
    for (const auto& note : registry.propagate(group)) {
      figures_notified.push_back(note.figure);
      const Json event{{"figureId", note.figure}, {"groupId", group.id},
                       {"name", group.name},      {"source", source},
                       {"rows", rows_to_json(group.rows)},
                       {"color", group.color.hex()},
                       {"alpha", group.alpha},    {"z", group.z}};
      for (DvpId owner : figures.at(note.figure).owners) notify(owner, "selection.created", event);
    }

    const Json event{{"source", source},
                     {"variable", name},
                     {"groupId", group.id},
                     {"rows", rows_to_json(group.rows)}};
    Json sessions = Json::array();
    for (DvpId session : hub->sessions()) {
      if (session == sender || !hub->has_stream(session)) continue;
      notify(session, "selection.set", event);
      sessions.push_back(session);
    }

    return Json{{"groupId", group.id},   {"name", name},
                {"variable", name},      {"source", source},
                {"count", group.rows.size()},
                {"color", group.color.hex()},
                {"alpha", group.alpha},  {"figures", std::move(figures_notified)},
                {"sessions", std::move(sessions)}};
  }

  /// Validates every affected figure against the new data before committing.
  Json store(const std::string& name, Variable value) {
    Json summary{{"name", name}};
    const auto* data = std::get_if<DataPtr>(&value);
    if (data) {
      summary["kind"] = "datasource";
      summary["rows"] = (*data)->rows();
      summary["cols"] = (*data)->cols();
    } else if (std::holds_alternative<double>(value)) {
      summary["kind"] = "number";
    } else {
      summary["kind"] = "rows";
      summary["count"] = std::get<RowIndexSet>(value).size();
    }

    std::vector<Figure*> affected;
    for (auto& [id, f] : figures) {
      if (f.source == name) affected.push_back(&f);
    }
    if (!affected.empty() && !data) {
      throw Error(ErrorKind::kType,
                  "variable '" + name + "' is shown in a figure and must stay a DataSource");
    }

    std::map<FigureId, gog::SceneGraph> scenes;
    for (Figure* f : affected) {
      if (f->kind == FigureKind::kParcoords) {
        const auto model = f->view->snapshot();
        parcoords::layout(**data, model->layout().axes(), model->layout().spacing());
      } else {
        scenes.emplace(f->id, gog::compile_script(f->script, **data));
      }
    }

    Json swapped = Json::array();
    for (Figure* f : affected) {
      const std::string old_id = f->data->id();
      f->data = *data;
      registry.rebind_figure(f->id, (*data)->id());
      if (f->kind == FigureKind::kParcoords) {
        f->view->swap_data(*data);
      } else {
        f->scene = std::move(scenes.at(f->id));
      }
      registry.delete_groups_for(old_id);
      swapped.push_back(f->id);
      const Json event = describe(*f);
      for (DvpId owner : f->owners) notify(owner, "figure.update", event);
    }
    variables[name] = std::move(value);
    summary["figures"] = std::move(swapped);
    return summary;
  }

  Json add_figure(DvpId sender, const Json& p, render::CanvasSize default_size) {
    const std::string source = string_at(p, "source");
    const DataPtr data = data_variable(source);
    const std::string kind = string_or(p, "kind", "parcoords");

    Figure f;
    f.source = source;
    f.data = data;
    f.size = size_at(p, default_size);
    if (kind == "parcoords") {
      f.kind = FigureKind::kParcoords;
      std::vector<std::string> axes;
      if (has(p, "axes")) {
        const Json& list = field(p, "axes");
        if (!list.is_array()) {
          throw SchemaError(ErrorKind::kType, "/payload/axes", "expected an array of names");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
          if (!list[i].is_string()) {
            throw SchemaError(ErrorKind::kType, "/payload/axes/" + std::to_string(i),
                              "expected a string");
          }
          axes.push_back(list[i].get<std::string>());
        }
      } else {
        for (std::size_t c = 0; c < data->cols(); ++c) {
          if (data->column(c).type().kind() == ColumnType::Kind::kQuantitative) {
            axes.push_back(data->column(c).name());
          }
        }
      }
      const double spacing = has(p, "spacing") ? number_at(p, "spacing") : 1.0;
      f.view = std::make_unique<parcoords::ParcoordsView>(data, std::move(axes), spacing);
    } else if (kind == "scene") {
      f.kind = FigureKind::kScene;
      f.script = string_at(p, "script");
      f.scene = gog::compile_script(f.script, *data);
    } else {
      throw SchemaError(ErrorKind::kSchema, "/payload/kind", "unknown figure kind '" + kind + "'");
    }
    // Render once up front so a bad canvas fails before anything is registered.
    const std::string svg = render(f, f.size);

    f.id = registry.register_figure(data->id());
    Json event = describe(f);

    std::vector<DvpId> targets;
    const bool explicit_target = has(p, "target");
    if (explicit_target) {
      targets.push_back(id_at(p, "target"));
    } else {
      for (DvpId client : hub->streaming_clients()) {
        if (client != sender) targets.push_back(client);
      }
    }

    Json deliveries = Json::array();
    Json failed = Json::array();
    for (DvpId target : targets) {
      try {
        const RequestId request = hub->send(target, "figure.add", event);
        f.owners.push_back(target);
        deliveries.push_back({{"dvpId", target}, {"requestId", request}});
      } catch (const DeliveryError& e) {
        if (explicit_target) {
          registry.close_figure(f.id);
          throw;
        }
        failed.push_back({{"dvpId", target}, {"requestId", e.request_id()}});
      }
    }

    const FigureId id = f.id;
    figures.emplace(id, std::move(f));
    return Json{{"figureId", id},
                {"kind", kind},
                {"rows", data->rows()},
                {"deliveries", std::move(deliveries)},
                {"failed", std::move(failed)},
                {"svg", svg}};
  }

  Json query(DvpId sender, const Json& p) {
    Figure& f = parcoords_figure(id_at(p, "figure"));
    const auto model = f.view->snapshot();
    const Json& q = field(p, "query");
    const std::string type = string_at(q, "type");

    RowIndexSet rows;
    Json extra = Json::object();
    if (type == "axis") {
      std::size_t axis = 0;
      const Json& which = field(q, "axis");
      if (which.is_string()) {
        const auto& axes = model->layout().axes();
        auto it = std::find(axes.begin(), axes.end(), which.get<std::string>());
        if (it == axes.end()) {
          throw Error(ErrorKind::kQuery, "unknown axis '" + which.get<std::string>() + "'");
        }
        axis = static_cast<std::size_t>(it - axes.begin());
      } else {
        axis = id_at(q, "axis");
        if (axis >= model->layout().size()) {
          throw Error(ErrorKind::kQuery, "axis " + std::to_string(axis) + " out of range");
        }
      }
      rows = model->axis_interval_query(axis, {number_at(q, "lo"), number_at(q, "hi")});
    } else if (type == "brush") {
      parcoords::QueryStats stats;
      rows = model->brush_segment_query(
          id_at(q, "pair"), {number_at(q, "x"), number_at(q, "ylo"), number_at(q, "yhi")},
          &stats);
      extra["candidates"] = stats.candidates;
    } else if (type == "slope") {
      rows = model->slope_query(id_at(q, "pair"), {number_at(q, "lo"), number_at(q, "hi")});
    } else {
      throw SchemaError(ErrorKind::kSchema, "/payload/query/type",
                        "unknown query type '" + type + "'");
    }

    Json result = has(p, "name") || !p.contains("apply") || p.at("apply") != false
                      ? apply_selection(sender, f.source, rows,
                                        string_or(p, "name", f.source + "_sel"), color_at(p),
                                        alpha_at(p))
                      : Json{{"count", rows.size()}};
    result["rows"] = rows_to_json(rows);
    result.update(extra);
    return result;
  }

  Json combine_groups(DvpId sender, const Json& p) {
    const auto* a = registry.find_group(id_at(p, "a"));
    const auto* b = registry.find_group(id_at(p, "b"));
    if (!a || !b) throw Error(ErrorKind::kSelection, "unknown selection group");
    const std::string op = string_at(p, "op");
    SetOp set_op;
    if (op == "union") {
      set_op = SetOp::kUnion;
    } else if (op == "intersect") {
      set_op = SetOp::kIntersect;
    } else if (op == "subtract") {
      set_op = SetOp::kSubtract;
    } else {
      throw SchemaError(ErrorKind::kSchema, "/payload/op", "unknown set operation '" + op + "'");
    }
    RowIndexSet rows = combine(*a, *b, set_op);
    if (!has(p, "name")) return Json{{"count", rows.size()}, {"rows", rows_to_json(rows)}};
    const std::string source = variable_for_source(a->source);
    Json result = apply_selection(sender, source, rows, string_at(p, "name"), color_at(p),
                                  alpha_at(p));
    result["rows"] = rows_to_json(rows);
    return result;
  }

  Json correlation(const Json& p) {
    const std::string source = string_at(p, "source");
    const DataPtr data = data_variable(source);
    RowIndexSet rows;
    if (has(p, "rows")) {
      rows = rows_from_json(field(p, "rows"), "/payload/rows");
    } else if (has(p, "group")) {
      const auto* g = registry.find_group(id_at(p, "group"));
      if (!g) throw Error(ErrorKind::kSelection, "unknown selection group");
      rows = g->rows;
    } else {
      rows = RowIndexSet::all(data->rows());
    }
    const double r =
        parcoords::selection_correlation(*data, rows, string_at(p, "a"), string_at(p, "b"));
    return Json{{"r", r}, {"count", rows.size()}};
  }

  Json list() const {
    Json out = Json::array();
    for (const auto& [id, f] : figures) {
      out.push_back({{"figureId", id},
                     {"source", f.source},
                     {"kind", std::string(to_string(f.kind))},
                     {"owners", f.owners},
                     {"groups", registry.visible_groups(id)}});
    }
    return out;
  }
};

Kernel::Kernel(std::shared_ptr<SceBackend> backend, KernelOptions options)
    : backend_(std::move(backend)),
      options_(options),
      replies_(options.reply_hold),
      state_(std::make_unique<State>()) {
  if (!backend_) throw Error(ErrorKind::kInvalidArgument, "kernel needs an SCE backend");
  state_->hub = &hub_;
}

Kernel::~Kernel() { hub_.shutdown(); }

NewDVTIdMessage Kernel::handshake() { return hub_.handshake(); }

Json Kernel::handle_eval(std::string_view body) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return error_reply(SchemaError(ErrorKind::kSchema, "", std::string("malformed JSON: ") + e.what()));
  }
  return handle_eval(doc);
}

Json Kernel::handle_eval(const Json& doc) {
  try {
    return ok_reply(eval(parse_eval(doc)));
  } catch (const Error& e) {
    return error_reply(e);
  } catch (const Json::exception& e) {
    return error_reply(ErrorKind::kSchema, e.what());
  } catch (const std::exception& e) {
    return error_reply(ErrorKind::kInvalidArgument, e.what());
  }
}

Json Kernel::handle_reply(std::string_view body) {
  try {
    const Json doc = Json::parse(body);
    SSEReplyMessage reply = parse_reply(doc);
    const RequestId request = reply.request_id;
    post_reply(std::move(reply));
    return ok_reply(Json{{"requestId", request}});
  } catch (const Json::parse_error& e) {
    return error_reply(SchemaError(ErrorKind::kSchema, "", std::string("malformed JSON: ") + e.what()));
  } catch (const Error& e) {
    return error_reply(e);
  } catch (const std::exception& e) {
    return error_reply(ErrorKind::kInvalidArgument, e.what());
  }
}

Json Kernel::eval(const SCEEvalMessage& message) {
  if (message.op == EvalOp::kConnect) {
    DvpId id = 0;
    if (message.dvp_id) {
      hub_.require_registered(*message.dvp_id);
      id = *message.dvp_id;
    } else {
      id = hub_.handshake().dvp_id;
    }
    hub_.set_session(id, true);
    return Json{{"dvpId", id}, {"sce", backend_->name()}};
  }

  if (!message.dvp_id) {
    throw SchemaError(ErrorKind::kSchema, "/dvpId", "missing field");
  }
  const DvpId sender = *message.dvp_id;
  hub_.require_registered(sender);
  const Json payload = message.payload.value_or(Json::object());

  switch (message.op) {
    case EvalOp::kDisconnect:
      hub_.set_session(sender, false);
      hub_.close_stream(sender);
      return Json::object();
    case EvalOp::kEval:
      if (!payload.is_string()) {
        throw SchemaError(ErrorKind::kType, "/payload", "expected an expression string");
      }
      return backend_->evaluate(payload.get<std::string>());
    case EvalOp::kStore: {
      return store(message.name.value_or(""), variable_from_json(payload));
    }
    case EvalOp::kFetch: {
      const std::string name = message.name.value_or("");
      return coordinator_.run([&] {
        auto it = state_->variables.find(name);
        if (it == state_->variables.end()) {
          throw Error(ErrorKind::kUnbound, "unbound variable '" + name + "'");
        }
        return variable_to_json(it->second);
      });
    }
    case EvalOp::kCommand: {
      const std::string name = message.name.value_or("");
      Json result = coordinator_.run([&] { return command(sender, name, payload); });
      await_acks(result, payload);
      return result;
    }
    case EvalOp::kConnect:
      break;
  }
  throw Error(ErrorKind::kUnsupported, "unsupported operation");
}

Json Kernel::command(DvpId sender, const std::string& name, const Json& payload) {
  State& s = *state_;
  if (name == "figure.add") return s.add_figure(sender, payload, options_.figure_size);
  if (name == "figure.svg") {
    const auto& f = s.figure(id_at(payload, "figure"));
    return Json{{"svg", s.render(f, size_at(payload, f.size))}};
  }
  if (name == "figure.close") {
    const FigureId id = id_at(payload, "figure");
    s.figure(id);
    s.registry.close_figure(id);
    s.figures.erase(id);
    return Json{{"figureId", id}};
  }
  if (name == "figure.list") return Json{{"figures", s.list()}};
  if (name == "selection.set") {
    std::string source;
    if (has(payload, "figure")) {
      source = s.figure(id_at(payload, "figure")).source;
    } else {
      source = string_at(payload, "source");
    }
    RowIndexSet rows = rows_from_json(field(payload, "rows"), "/payload/rows");
    return s.apply_selection(sender, source, std::move(rows),
                             string_or(payload, "name", source + "_sel"), color_at(payload),
                             alpha_at(payload));
  }
  if (name == "selection.query") return s.query(sender, payload);
  if (name == "selection.combine") return s.combine_groups(sender, payload);
  if (name == "selection.correlation") return s.correlation(payload);
  throw Error(ErrorKind::kUnsupported, "unknown command '" + name + "'");
}

void Kernel::await_acks(Json& result, const Json& payload) {
  if (!has(payload, "await") || payload.at("await") != true) return;
  if (!result.contains("deliveries")) return;
  const auto timeout = has(payload, "timeout_ms")
                           ? std::chrono::milliseconds(id_at(payload, "timeout_ms"))
                           : options_.default_timeout;
  Json acks = Json::array();
  for (const auto& delivery : result.at("deliveries")) {
    const auto reply = wait_for_reply(delivery.at("requestId").get<RequestId>(),
                                      delivery.at("dvpId").get<DvpId>(), timeout);
    acks.push_back(to_json(reply));
  }
  result["acks"] = std::move(acks);
}

RequestId Kernel::send_sse(DvpId target, const std::string& command, Json payload) {
  return hub_.send(target, command, std::move(payload));
}

SSEReplyMessage Kernel::wait_for_reply(RequestId request, DvpId dvp,
                                       std::optional<std::chrono::milliseconds> timeout) {
  return replies_.wait(request, dvp, timeout.value_or(options_.default_timeout));
}

void Kernel::post_reply(SSEReplyMessage reply) {
  hub_.require_registered(reply.dvp_id);
  replies_.post(std::move(reply));
}

Json Kernel::store(const std::string& name, Variable value) {
  if (name.empty()) throw SchemaError(ErrorKind::kSchema, "/name", "empty variable name");
  return coordinator_.run([&]() mutable { return state_->store(name, std::move(value)); });
}

std::optional<Variable> Kernel::variable(const std::string& name) {
  return coordinator_.run([&]() -> std::optional<Variable> {
    auto it = state_->variables.find(name);
    if (it == state_->variables.end()) return std::nullopt;
    return it->second;
  });
}

std::vector<FigureInfo> Kernel::figures() {
  return coordinator_.run([&] {
    std::vector<FigureInfo> out;
    for (const auto& [id, f] : state_->figures) out.push_back({id, f.kind, f.source, f.owners});
    return out;
  });
}

std::vector<GroupId> Kernel::visible_groups(FigureId figure) {
  return coordinator_.run([&] { return state_->registry.visible_groups(figure); });
}

}  // namespace dvp::bridge
