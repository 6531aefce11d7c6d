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

#include "idem/render.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace idem {

namespace {

std::vector<double> distinct_axis(const DensityTable& t, std::size_t axis) {
  std::vector<double> v;
  v.reserve(t.size());
  for (const auto& c : t.coordinates) v.push_back(c[axis]);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t position(const std::vector<double>& axis, double c) {
  return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), c) - axis.begin());
}

}  // namespace

GrayImage render_density(const DensityTable& t, double floor) {
  if (!(floor < 0.0) || !std::isfinite(floor)) throw Error("render floor must be negative");
  if (t.dimension == 0 || t.dimension > 2) {
    throw Error("render needs 1-D or 2-D coordinates (got dimension " +
                std::to_string(t.dimension) + ")");
  }
  const auto xs = distinct_axis(t, 0);
  const std::vector<double> ys = t.dimension == 2 ? distinct_axis(t, 1) : std::vector<double>{0.0};
  GrayImage img;
  img.width = xs.size();
  img.height = ys.size();
  img.pixels.assign(img.width * img.height, 0);
  for (Index i = 0; i < t.size(); ++i) {
    const MaxPlus v = t.values[i];
    std::uint8_t g = 0;
    if (v.is_finite() && v.value() > floor) {
      const double s = std::min(1.0, (v.value() - floor) / -floor);
      g = static_cast<std::uint8_t>(std::lround(255.0 * s));
    }
    const std::size_t col = position(xs, t.coordinates[i][0]);
    const std::size_t row =
        t.dimension == 2 ? img.height - 1 - position(ys, t.coordinates[i][1]) : 0;
    img.pixels[row * img.width + col] = g;
  }
  return img;
}

void write_pgm(std::ostream& os, const GrayImage& img) {
  os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()),
           static_cast<std::streamsize>(img.pixels.size()));
}

}  // namespace idem
