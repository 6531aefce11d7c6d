// Copyright 2026 The idem Authors.
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "idem/density_io.hpp"

namespace idem {

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  ///< row-major, top row first

  std::uint8_t at(std::size_t col, std::size_t row) const { return pixels[row * width + col]; }
};

/// One pixel per distinct coordinate value (columns follow the first axis,
/// rows the second with the largest value on top). Densities in [floor, 0]
/// map linearly onto [0, 255]; lower values and -inf become 0. Cells with no
/// point stay 0.
GrayImage render_density(const DensityTable& t, double floor);

/// Binary portable graymap (P5, maxval 255).
void write_pgm(std::ostream& os, const GrayImage& img);

}  // namespace idem
