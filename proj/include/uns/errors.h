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

#ifndef UNS_ERRORS_H_
#define UNS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uns {

// Raised for precondition violations (bad lengths, out-of-range parameters).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when numerical input is degenerate, e.g. a zero-energy
// autocorrelation handed to the Levinson recursion.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the bitstream reader. Carries the frame index where decoding
// failed, or npos for header-level failures.
class CorruptStream : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit CorruptStream(const std::string& what, std::size_t frame = npos)
      : std::runtime_error(frame == npos
                               ? what
                               : "frame " + std::to_string(frame) + ": " + what),
        frame_(frame) {}

  std::size_t frame() const { return frame_; }

 private:
  std::size_t frame_;
};

}  // namespace uns

#endif  // UNS_ERRORS_H_
