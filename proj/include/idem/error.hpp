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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idem {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two objects that must live on the same space do not.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

/// A point map violates its declared contraction witness.
class CertificateError : public Error {
 public:
  CertificateError(const std::string& what, std::size_t i, std::size_t j, double lhs, double rhs)
      : Error(what), first(i), second(j), image_distance(lhs), witness_bound(rhs) {}

  std::size_t first;
  std::size_t second;
  double image_distance;
  double witness_bound;
};

}  // namespace idem
