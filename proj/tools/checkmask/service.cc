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

#include "service.h"

#include "fgbg/error.h"
#include "fgbg/image_io.h"
#include "httplib.h"

namespace fgbg::checkmask {
namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& message) {
  send_json(res, status, {{"error", std::string(code)}, {"message", message}});
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownImage:
    case ErrorCode::kCandidatesMissing:
      return 404;
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kInvalidArgument:
      return 400;
    default:
      return 500;
  }
}

// Runs handler, turning library errors into JSON error responses.
template <typename F>
void guarded(httplib::Response& res, F&& handler) {
  try {
    handler();
  } catch (const Error& e) {
    send_error(res, http_status(e.code()), error_code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "Internal", e.what());
  }
}

void send_file(httplib::Response& res, const std::filesystem::path& p) {
  const auto bytes = read_file_bytes(p);
  res.set_content(std::string(bytes.begin(), bytes.end()), "image/png");
}

}  // namespace

struct CheckmaskService::Impl {
  AnnotationStore& store;
  ServiceOptions options;
  httplib::Server server;

  Impl(AnnotationStore& s, ServiceOptions o) : store(s), options(std::move(o)) { routes(); }

  void routes() {
    server.Get("/api/config", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"page_size", options.page_size}});
    });

    server.Get("/api/queue", [this](const httplib::Request& req, httplib::Response& res) {
      if (!req.has_param("annotator") || req.get_param_value("annotator").empty()) {
        send_error(res, 400, "InvalidArgument", "missing annotator parameter");
        return;
      }
      const std::string who = req.get_param_value("annotator");
      send_json(res, 200, {{"pending", store.list_pending(who)}, {"done", store.list_done(who)}});
    });

    server.Get(R"(/api/images/([^/]+))", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
      guarded(res, [&] {
        const CandidateView v = store.get_candidates(req.matches[1]);
        json urls = json::array();
        for (std::size_t k = 0; k < v.candidate_paths.size(); ++k) {
          urls.push_back("/files/candidates/" + v.image_id + "/" + std::to_string(k));
        }
        send_json(res, 200, {{"image_id", v.image_id},
                             {"image_url", "/files/images/" + v.image_id},
                             {"candidates", urls},
                             {"meta", v.meta}});
      });
    });

    server.Post(R"(/api/images/([^/]+)/selection)", [this](const httplib::Request& req,
                                                            httplib::Response& res) {
      guarded(res, [&] {
        json body;
        try {
          body = json::parse(req.body);
        } catch (const json::exception&) {
          send_error(res, 400, "InvalidArgument", "body is not JSON");
          return;
        }
        if (!body.is_object() || !body.contains("candidate_index") ||
            !body["candidate_index"].is_number_integer() || !body.contains("annotator_id") ||
            !body["annotator_id"].is_string() || !body.contains("elapsed_ms") ||
            !body["elapsed_ms"].is_number_integer()) {
          send_error(res, 400, "InvalidArgument",
                     "expected {candidate_index: int, annotator_id: string, elapsed_ms: int}");
          return;
        }
        SelectionRecord rec;
        rec.image_id = req.matches[1];
        rec.candidate_index = body["candidate_index"].get<int>();
        rec.annotator_id = body["annotator_id"].get<std::string>();
        rec.elapsed_ms = body["elapsed_ms"].get<std::int64_t>();
        send_json(res, 200, to_json(store.submit(std::move(rec))));
      });
    });

    server.Get("/api/export", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        const auto tar = store.export_tar();
        res.set_header("Content-Disposition", "attachment; filename=\"selected_masks.tar\"");
        res.set_content(std::string(tar.begin(), tar.end()), "application/x-tar");
      });
    });

    server.Get(R"(/files/images/([^/]+))", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
      guarded(res, [&] {
        const ManifestEntry* e = store.manifest().find(req.matches[1]);
        if (!e) throw Error(ErrorCode::kUnknownImage, "unknown image '" + std::string(req.matches[1]) + "'");
        send_file(res, e->image_path);
      });
    });

    server.Get(R"(/files/candidates/([^/]+)/(\d+))", [this](const httplib::Request& req,
                                                             httplib::Response& res) {
      guarded(res, [&] {
        const CandidateView v = store.get_candidates(req.matches[1]);
        const std::size_t k = std::stoul(req.matches[2]);
        if (k >= v.candidate_paths.size()) {
          send_error(res, 404, "IndexOutOfRange", "no candidate " + std::to_string(k));
          return;
        }
        send_file(res, v.candidate_paths[k]);
      });
    });

    if (options.static_dir) server.set_mount_point("/", options.static_dir->string());
  }
};

CheckmaskService::CheckmaskService(AnnotationStore& store, ServiceOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

CheckmaskService::~CheckmaskService() = default;

bool CheckmaskService::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int CheckmaskService::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool CheckmaskService::run() { return impl_->server.listen_after_bind(); }

void CheckmaskService::wait_until_ready() const { impl_->server.wait_until_ready(); }

void CheckmaskService::stop() { impl_->server.stop(); }

}  // namespace fgbg::checkmask
