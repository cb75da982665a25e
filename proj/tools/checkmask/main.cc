// Copyright 2026 The fgbg Authors.
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

// checkmask: serves mask candidates to annotators and exports their choices.
//
//   checkmask --data-dir DIR [--log-path FILE] [--port 8090]
//   checkmask export --data-dir DIR [--log-path FILE] --out OUT

#include <csignal>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "annotation_store.h"
#include "service.h"

namespace {

fgbg::checkmask::CheckmaskService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CheckMask annotation service", "checkmask"};
  std::filesystem::path data_dir, log_path, out;
  std::optional<std::filesystem::path> static_dir;
  std::string host = "0.0.0.0";
  int port = 8090;
  int page_size = 8;
  app.add_option("--data-dir", data_dir, "Directory with manifest.json and candidates/")
      ->required();
  app.add_option("--log-path", log_path, "Selection log (default <data-dir>/selections.log)");
  app.add_option("--port", port, "Listen port")->capture_default_str();
  app.add_option("--host", host, "Listen address")->capture_default_str();
  app.add_option("--page-size", page_size, "Candidates per page in the UI")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--static-dir", static_dir, "Frontend build served at /");
  auto* exp = app.add_subcommand("export", "Write selected masks and stats.json");
  exp->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (log_path.empty()) log_path = data_dir / "selections.log";

  try {
    fgbg::checkmask::AnnotationStore store(data_dir, log_path);
    if (*exp) {
      const std::size_t n = store.export_selected(out);
      std::cout << "exported " << n << " masks to " << out.string() << "\n";
      return 0;
    }
    fgbg::checkmask::CheckmaskService service(store, {page_size, static_dir});
    g_service = &service;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "checkmask listening on " << host << ":" << port << "\n" << std::flush;
    if (!service.listen(host, port)) {
      std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
      return 2;
    }
    g_service = nullptr;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
