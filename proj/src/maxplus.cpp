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

#include "idem/maxplus.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace idem {

MaxPlus::MaxPlus(double v) {
  if (std::isnan(v)) throw std::invalid_argument("max-plus value cannot be NaN");
  if (v == std::numeric_limits<double>::infinity()) {
    throw std::invalid_argument("max-plus value cannot be +inf");
  }
  if (v == -std::numeric_limits<double>::infinity()) return;
  v_ = v;
  finite_ = true;
}

double MaxPlus::value() const {
  if (!finite_) throw std::logic_error("value() called on the bottom element");
  return v_;
}

double MaxPlus::to_double() const noexcept {
  return finite_ ? v_ : -std::numeric_limits<double>::infinity();
}

MaxPlus big_oplus(std::span<const MaxPlus> values) noexcept {
  MaxPlus acc;
  for (MaxPlus v : values) acc = oplus(acc, v);
  return acc;
}

MaxPlus big_oplus(std::initializer_list<MaxPlus> values) noexcept {
  return big_oplus(std::span<const MaxPlus>(values.begin(), values.size()));
}

std::string to_string(MaxPlus v) {
  if (v.is_bottom()) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v.value());
  return buf;
}

MaxPlus parse_maxplus(const std::string& token) {
  if (token == "-inf" || token == "-infinity") return MaxPlus::bottom();
  if (token.empty()) throw std::invalid_argument("empty max-plus token");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) {
    throw std::invalid_argument("malformed max-plus value '" + token + "'");
  }
  return MaxPlus(v);
}

}  // namespace idem
