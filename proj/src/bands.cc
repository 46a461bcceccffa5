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

#include "uns/bands.h"

#include <numeric>

#include "uns/errors.h"

namespace uns {

void BandLayout::Validate() const {
  if (upper_edges.empty()) throw InvalidArgument("band layout is empty");
  std::size_t prev = 0;
  for (std::size_t e : upper_edges) {
    if (e <= prev) throw InvalidArgument("band edges must strictly increase");
    prev = e;
  }
}

int BitBudget::Total(BitrateMode mode) const {
  const auto& v = For(mode);
  return std::accumulate(v.begin(), v.end(), 0);
}

}  // namespace uns
