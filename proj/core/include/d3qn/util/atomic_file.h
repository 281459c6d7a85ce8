// Copyright 2026 The d3qn Authors.
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

#ifndef D3QN_UTIL_ATOMIC_FILE_H_
#define D3QN_UTIL_ATOMIC_FILE_H_

#include <filesystem>
#include <fstream>
#include <string_view>

namespace d3qn {

// Writes go to "<path>.partial"; Commit() flushes and renames onto `path`.
// A destroyed, uncommitted file leaves the partial file behind and never
// touches `path`.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path, bool binary = false);
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ofstream& stream() { return out_; }
  const std::filesystem::path& partial_path() const { return partial_; }
  // Throws std::runtime_error when the write or rename fails.
  void Commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool committed_ = false;
};

void WriteFileAtomic(const std::filesystem::path& path, std::string_view content);

}  // namespace d3qn

#endif  // D3QN_UTIL_ATOMIC_FILE_H_
