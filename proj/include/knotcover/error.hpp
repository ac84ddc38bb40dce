// Copyright 2026 The knotcover Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace knotcover {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent scene description.
class SceneError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A configuration that is valid but not in general position (tangencies,
/// grazing rays, near-coplanar triangles). Callers perturb and retry.
class GenericityError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class GroupError : public Error {
 public:
  using Error::Error;
};

}  // namespace knotcover
