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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "idem/maxplus.hpp"
#include "idem/rng.hpp"

using idem::MaxPlus;
using idem::oplus;
using idem::odot;

namespace {

MaxPlus draw(idem::Rng& rng) {
  if (rng.bernoulli(0.2)) return MaxPlus::bottom();
  return MaxPlus(rng.uniform(-10.0, 10.0));
}

}  // namespace

TEST_CASE("bottom is a tagged value") {
  const MaxPlus b = MaxPlus::bottom();
  CHECK(b.is_bottom());
  CHECK_FALSE(b.is_finite());
  CHECK(MaxPlus() == b);
  CHECK(MaxPlus(-std::numeric_limits<double>::infinity()) == b);
  CHECK(b.to_double() == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS((void)b.value(), std::logic_error);
  CHECK(b < MaxPlus(-1e300));
}

TEST_CASE("invalid payloads are rejected") {
  CHECK_THROWS_AS(MaxPlus(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(MaxPlus(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("neutral and absorbing elements") {
  const MaxPlus a(3.5);
  CHECK(oplus(a, MaxPlus::bottom()) == a);
  CHECK(odot(a, MaxPlus::zero()) == a);
  CHECK(odot(a, MaxPlus::bottom()).is_bottom());
  CHECK(oplus(MaxPlus(2.0), MaxPlus(-1.0)) == MaxPlus(2.0));
  CHECK(odot(MaxPlus(2.0), MaxPlus(-1.0)) == MaxPlus(1.0));
}

TEST_CASE("semiring laws on random values") {
  idem::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const MaxPlus a = draw(rng), b = draw(rng), c = draw(rng);
    CHECK(oplus(a, b) == oplus(b, a));
    CHECK(oplus(oplus(a, b), c) == oplus(a, oplus(b, c)));
    CHECK(oplus(a, a) == a);
    CHECK(odot(a, b) == odot(b, a));
    const MaxPlus l = odot(a, oplus(b, c));
    const MaxPlus r = oplus(odot(a, b), odot(a, c));
    CHECK(l == r);
  }
}

TEST_CASE("big_oplus") {
  CHECK(idem::big_oplus({}).is_bottom());
  CHECK(idem::big_oplus({MaxPlus(-2.0), MaxPlus::bottom(), MaxPlus(1.0)}) == MaxPlus(1.0));
}

TEST_CASE("text round trip") {
  idem::Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const MaxPlus a = draw(rng);
    CHECK(idem::parse_maxplus(idem::to_string(a)) == a);
  }
  CHECK(idem::to_string(MaxPlus::bottom()) == "-inf");
  CHECK_THROWS_AS(idem::parse_maxplus("abc"), std::invalid_argument);
  CHECK_THROWS_AS(idem::parse_maxplus("inf"), std::invalid_argument);
  CHECK_THROWS_AS(idem::parse_maxplus(""), std::invalid_argument);
}

TEST_CASE("rng is reproducible and in range") {
  idem::Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  idem::Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7u);
  }
}
