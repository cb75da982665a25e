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

#include "selection_log.h"

#include <unistd.h>
#include <zlib.h>

#include <chrono>
#include <ctime>
#include <fstream>

#include "fgbg/error.h"

namespace fgbg::checkmask {
namespace {

std::uint32_t crc_of(std::string_view s) {
  return std::uint32_t(
      crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(s.data()), uInt(s.size())));
}

}  // namespace

nlohmann::json to_json(const SelectionRecord& r) {
  return {{"image_id", r.image_id},
          {"candidate_index", r.candidate_index},
          {"annotator_id", r.annotator_id},
          {"elapsed_ms", r.elapsed_ms},
          {"timestamp", r.timestamp}};
}

std::string encode_log_line(const SelectionRecord& r) {
  const std::string body = to_json(r).dump();
  char crc[16];
  std::snprintf(crc, sizeof crc, "%08x", crc_of(body));
  return body + "\t" + crc + "\n";
}

std::optional<SelectionRecord> decode_log_line(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  const auto tab = line.rfind('\t');
  if (tab == std::string_view::npos || line.size() - tab - 1 != 8) return std::nullopt;
  const std::string_view body = line.substr(0, tab);
  std::uint32_t stored = 0;
  for (char c : line.substr(tab + 1)) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else {
      return std::nullopt;
    }
    stored = stored << 4 | std::uint32_t(v);
  }
  if (stored != crc_of(body)) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(body);
    SelectionRecord r;
    r.image_id = j.at("image_id").get<std::string>();
    r.candidate_index = j.at("candidate_index").get<int>();
    r.annotator_id = j.at("annotator_id").get<std::string>();
    r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    r.timestamp = j.value("timestamp", "");
    return r;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()) % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  const std::size_t n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  std::snprintf(buf + n, sizeof buf - n, ".%03dZ", int(ms.count()));
  return buf;
}

SelectionLog::SelectionLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
  }
  file_ = std::fopen(path_.c_str(), "ab+");
  if (!file_) throw Error(ErrorCode::kIoFailure, "cannot open selection log " + path_.string());
  if (std::fseek(file_, 0, SEEK_END) == 0 && std::ftell(file_) > 0) {
    std::fseek(file_, -1, SEEK_END);
    const int last = std::fgetc(file_);
    std::fseek(file_, 0, SEEK_END);
    if (last != '\n') {
      std::fputc('\n', file_);
      std::fflush(file_);
    }
  }
}

SelectionLog::~SelectionLog() {
  if (file_) std::fclose(file_);
}

std::vector<SelectionRecord> SelectionLog::load() const {
  std::vector<SelectionRecord> out;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (auto r = decode_log_line(line)) out.push_back(std::move(*r));
  }
  return out;
}

void SelectionLog::append(const SelectionRecord& r) {
  const std::string line = encode_log_line(r);
  std::lock_guard lock(mu_);
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0) {
    throw Error(ErrorCode::kIoFailure, "append to " + path_.string() + " failed");
  }
  ::fsync(fileno(file_));
}

}  // namespace fgbg::checkmask
