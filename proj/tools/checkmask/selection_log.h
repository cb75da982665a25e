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

// Append-only JSON-lines log of annotator selections. Each line is
//
//   {"image_id":...,"candidate_index":...,...}<TAB><crc32 of the JSON, 8 hex>
//
// Lines that fail to parse or whose checksum does not match (a write torn by
// a crash, say) are skipped on load.

#ifndef FGBG_TOOLS_CHECKMASK_SELECTION_LOG_H_
#define FGBG_TOOLS_CHECKMASK_SELECTION_LOG_H_

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace fgbg::checkmask {

struct SelectionRecord {
  std::string image_id;
  int candidate_index = 0;  // -1: no candidate acceptable
  std::string annotator_id;
  std::int64_t elapsed_ms = 0;
  std::string timestamp;  // server receipt time, UTC, ISO 8601

  friend bool operator==(const SelectionRecord&, const SelectionRecord&) = default;
};

nlohmann::json to_json(const SelectionRecord& r);

std::string encode_log_line(const SelectionRecord& r);
// nullopt for a damaged or malformed line.
std::optional<SelectionRecord> decode_log_line(std::string_view line);

// Current UTC time as 2026-01-31T12:34:56.789Z.
std::string utc_timestamp();

class SelectionLog {
 public:
  // Opens (creating if needed) the log for appending. A final line without
  // its newline is terminated first so the next append starts cleanly.
  explicit SelectionLog(std::filesystem::path path);
  ~SelectionLog();
  SelectionLog(const SelectionLog&) = delete;
  SelectionLog& operator=(const SelectionLog&) = delete;

  const std::filesystem::path& path() const { return path_; }

  // Intact records in file order.
  std::vector<SelectionRecord> load() const;

  // Writes and flushes one line; serialized across threads.
  void append(const SelectionRecord& r);

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::mutex mu_;
};

}  // namespace fgbg::checkmask

#endif  // FGBG_TOOLS_CHECKMASK_SELECTION_LOG_H_
