// Copyright 2026 The UNS Codec Authors.
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

// Plain-text configuration: one "key = value" per line, '#' comments, and
// "include <path>" lines resolved relative to the including file. Later
// assignments override earlier ones; unknown keys are rejected.

#ifndef UNS_CONFIG_FILE_H_
#define UNS_CONFIG_FILE_H_

#include <stdexcept>
#include <string>

#include "uns/config.h"

namespace uns {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies the assignments in `text` on top of `base`. `origin` names the
// source in error messages and anchors relative includes.
CodecConfig ParseConfig(const std::string& text, const std::string& origin,
                        CodecConfig base = {});
CodecConfig LoadConfig(const std::string& path, CodecConfig base = {});

// Every tunable, commented. The quantizer table is written by
// FormatEcupqTable and pulled in with an include when `table_include` is
// non-empty, inline otherwise.
std::string FormatConfig(const CodecConfig& cfg,
                         const std::string& table_include = "");
std::string FormatEcupqTable(const EcupqTable& table);

}  // namespace uns

#endif  // UNS_CONFIG_FILE_H_
