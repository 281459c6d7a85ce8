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

#include "d3qn/util/atomic_file.h"

#include <stdexcept>
#include <system_error>

namespace d3qn {

AtomicFile::AtomicFile(std::filesystem::path path, bool binary)
    : path_(std::move(path)), partial_(path_.string() + ".partial") {
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  out_.open(partial_, binary ? std::ios::binary | std::ios::trunc
                             : std::ios::out | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open " + partial_.string());
}

void AtomicFile::Commit() {
  if (committed_) return;
  out_.flush();
  if (!out_) throw std::runtime_error("write failed for " + partial_.string());
  out_.close();
  std::error_code ec;
  std::filesystem::rename(partial_, path_, ec);
  if (ec) {
    throw std::runtime_error("cannot rename " + partial_.string() + " to " +
                             path_.string() + ": " + ec.message());
  }
  committed_ = true;
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view content) {
  AtomicFile file(path, /*binary=*/true);
  file.stream().write(content.data(), static_cast<std::streamsize>(content.size()));
  file.Commit();
}

}  // namespace d3qn
