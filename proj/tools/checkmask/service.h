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

// HTTP/JSON front of an AnnotationStore.
//
//   GET  /api/config                    {page_size}
//   GET  /api/queue?annotator=ID        {pending:[ids], done:[ids]}
//   GET  /api/images/{id}               {image_id, image_url, candidates:[urls], meta}
//   POST /api/images/{id}/selection     {candidate_index, annotator_id, elapsed_ms}
//                                       -> 200 stored record | 400 | 404
//   GET  /api/export                    tar of <id>/mask.png and stats.json
//   GET  /files/images/{id}             image PNG
//   GET  /files/candidates/{id}/{k}     candidate k (0-based) PNG
//
// Errors carry {"error": <code name>, "message": ...}.

#ifndef FGBG_TOOLS_CHECKMASK_SERVICE_H_
#define FGBG_TOOLS_CHECKMASK_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "annotation_store.h"

namespace fgbg::checkmask {

struct ServiceOptions {
  int page_size = 8;
  // Served at / when set (the annotator frontend build).
  std::optional<std::filesystem::path> static_dir;
};

class CheckmaskService {
 public:
  CheckmaskService(AnnotationStore& store, ServiceOptions options = {});
  ~CheckmaskService();
  CheckmaskService(const CheckmaskService&) = delete;
  CheckmaskService& operator=(const CheckmaskService&) = delete;

  // Binds and blocks serving until stop(). False when the port is unusable.
  bool listen(const std::string& host, int port);
  // Binds to a free port and returns it (-1 on failure); then call run().
  int bind_any_port(const std::string& host);
  bool run();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fgbg::checkmask

#endif  // FGBG_TOOLS_CHECKMASK_SERVICE_H_
