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

// dvp: serve | render | mock-sce
//
// Exit codes: 0 ok, 1 usage, 2 bind failure, 3 compile/render failure,
// 4 protocol failure.

#include <CLI11.hpp>

#include <pthread.h>

#include <csignal>
#include <cstring>
#include <optional>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dvp/bridge/kernel.hpp"
#include "dvp/bridge/server.hpp"
#include "dvp/csv.hpp"
#include "dvp/gog/compiler.hpp"
#include "dvp/mock_sce.hpp"
#include "dvp/render/svg.hpp"
#include "dvp/wire.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitBind = 2;
constexpr int kExitRender = 3;
constexpr int kExitProtocol = 4;
constexpr int kDefaultPort = 8765;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int env_port() {
  const char* text = std::getenv("DVP_PORT");
  if (!text || !*text) return kDefaultPort;
  try {
    std::size_t used = 0;
    const int port = std::stoi(text, &used);
    if (used == std::strlen(text) && port >= 0 && port <= 65535) return port;
  } catch (const std::exception&) {
  }
  std::cerr << "dvp: ignoring malformed DVP_PORT '" << text << "'\n";
  return kDefaultPort;
}

int cmd_serve(std::optional<int> port_flag, const std::string& host, const std::string& data_dir) {
  namespace fs = std::filesystem;
  // Block the signals before any thread starts so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  dvp::bridge::Kernel kernel;
  dvp::bridge::ServerOptions options;
  options.host = host;
  options.port = port_flag.value_or(env_port());

  if (!data_dir.empty()) {
    if (!fs::is_directory(data_dir)) {
      std::cerr << "dvp: data dir " << data_dir << " is not a directory\n";
      return kExitUsage;
    }
    for (const auto& entry : fs::directory_iterator(data_dir)) {
      if (entry.path().extension() != ".csv") continue;
      const std::string name = entry.path().stem().string();
      try {
        dvp::CsvOptions csv;
        csv.name = name;
        kernel.store(name, std::make_shared<const dvp::DataSource>(
                               dvp::load_csv(read_file(entry.path().string()), csv)));
        std::cerr << "dvp: loaded " << name << "\n";
      } catch (const std::exception& e) {
        std::cerr << "dvp: skipping " << entry.path().string() << ": " << e.what() << "\n";
      }
    }
    if (fs::is_directory(fs::path(data_dir) / "ui")) {
      options.static_dir = (fs::path(data_dir) / "ui").string();
    }
  }

  dvp::bridge::BridgeServer server(kernel, options);
  try {
    server.start();
  } catch (const dvp::bridge::BindError& e) {
    std::cerr << "dvp: " << e.what() << "\n";
    return kExitBind;
  }
  std::cerr << "dvp: listening on " << server.url() << std::endl;

  int received = 0;
  sigwait(&signals, &received);
  std::cerr << "dvp: shutting down\n";
  server.stop();
  return 0;
}

bool parse_size(const std::string& text, dvp::render::CanvasSize& size) {
  const auto x = text.find('x');
  if (x == std::string::npos) return false;
  try {
    std::size_t used_w = 0;
    std::size_t used_h = 0;
    const std::string w = text.substr(0, x);
    const std::string h = text.substr(x + 1);
    size.width = std::stoi(w, &used_w);
    size.height = std::stoi(h, &used_h);
    return used_w == w.size() && used_h == h.size();
  } catch (const std::exception&) {
    return false;
  }
}

int cmd_render(const std::string& script_path, const std::string& data_path,
               const std::string& out_path, const std::string& size_text) {
  dvp::render::CanvasSize size;
  if (!parse_size(size_text, size)) {
    std::cerr << "dvp: --size expects WxH, got '" << size_text << "'\n";
    return kExitRender;
  }
  try {
    const std::string script = read_file(script_path);
    dvp::CsvOptions csv;
    csv.name = std::filesystem::path(data_path).stem().string();
    const auto data = dvp::load_csv(read_file(data_path), csv);
    const auto scene = dvp::gog::compile_script(script, data);
    const std::string svg = dvp::render::render_scene(scene, size);
    if (out_path.empty() || out_path == "-") {
      std::cout << svg;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      out << svg;
      if (!out) throw std::runtime_error("cannot write " + out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "dvp: " << e.what() << "\n";
    return kExitRender;
  }
  return 0;
}

int cmd_mock_sce(std::string server, const std::string& script_path,
                 const std::string& out_path) {
  if (server.empty()) server = "http://127.0.0.1:" + std::to_string(env_port());
  dvp::Json script;
  try {
    script = dvp::Json::parse(read_file(script_path));
  } catch (const std::exception& e) {
    std::cerr << "dvp: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto result = dvp::mock::run_script(server, script);
  dvp::Json variables = dvp::Json::object();
  for (const auto& [name, value] : result.session.variables) {
    variables[name] = dvp::bridge::variable_to_json(value);
  }
  dvp::Json doc{{"ok", result.ok},
                {"stepsRun", result.steps_run},
                {"dvpId", result.session.dvp_id ? dvp::Json(*result.session.dvp_id) : dvp::Json()},
                {"transcript", result.session.log},
                {"variables", std::move(variables)}};
  if (result.failed_step) {
    doc["failedStep"] = *result.failed_step;
    doc["error"] = result.error;
  }
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream(out_path, std::ios::binary) << text;
  }
  if (!result.ok) {
    std::cerr << "dvp: step " << *result.failed_step << " failed: " << result.error << "\n";
    return kExitProtocol;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visualization platform kernel: bridge server, offline renderer, mock SCE"};
  app.require_subcommand(1);

  auto* serve = app.add_subcommand("serve", "Run the bridge server");
  std::optional<int> port;
  std::string host = "127.0.0.1";
  std::string data_dir;
  serve->add_option("--port", port, "Listen port (overrides DVP_PORT; 0 picks one)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--data-dir", data_dir, "Preload *.csv as variables; serve ui/ under /ui");

  auto* render = app.add_subcommand("render", "Compile a GoG script against a CSV and write SVG");
  std::string script_path;
  std::string data_path;
  std::string out_path;
  std::string size_text = "640x480";
  render->add_option("script", script_path, "GoG script")->required();
  render->add_option("--data", data_path, "CSV with a header row")->required();
  render->add_option("-o,--output", out_path, "Output SVG (default stdout)");
  render->add_option("--size", size_text, "Canvas WxH")->capture_default_str();

  auto* mock = app.add_subcommand("mock-sce", "Run a mock SCE step script against a server");
  std::string server;
  std::string mock_script;
  std::string transcript_path;
  mock->add_option("--server", server, "Server url (default http://127.0.0.1:$DVP_PORT)");
  mock->add_option("script", mock_script, "Step script (JSON)")->required();
  mock->add_option("-o,--output", transcript_path, "Transcript file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (serve->parsed()) return cmd_serve(port, host, data_dir);
  if (render->parsed()) return cmd_render(script_path, data_path, out_path, size_text);
  return cmd_mock_sce(server, mock_script, transcript_path);
}
