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

#ifndef UNS_BANDS_H_
#define UNS_BANDS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace uns {

// Sub-band partition of the spectrum on a modified ERB scale. Band b covers
// bins [edge(b-1), edge(b)) with edge(-1) = 0.
struct BandLayout {
  std::vector<std::size_t> upper_edges{40, 90, 140, 200, 260, 330, 410, 512};

  std::size_t size() const { return upper_edges.size(); }
  std::size_t begin(std::size_t band) const {
    return band == 0 ? 0 : upper_edges[band - 1];
  }
  std::size_t end(std::size_t band) const { return upper_edges[band]; }
  std::size_t width(std::size_t band) const { return end(band) - begin(band); }
  std::size_t num_bins() const { return upper_edges.back(); }

  // Throws InvalidArgument unless edges are strictly increasing and positive.
  void Validate() const;
};

enum class BitrateMode { k12kbps, k16kbps };

struct BitBudget {
  std::vector<int> kbps12{45, 34, 30, 23, 19, 16, 16, 16};
  std::vector<int> kbps16{67, 50, 45, 34, 29, 23, 23, 23};

  const std::vector<int>& For(BitrateMode mode) const {
    return mode == BitrateMode::k12kbps ? kbps12 : kbps16;
  }
  int Total(BitrateMode mode) const;
};

}  // namespace uns

#endif  // UNS_BANDS_H_
