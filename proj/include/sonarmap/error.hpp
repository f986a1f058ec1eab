/*
 * Copyright 2026 The sonarmap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SONARMAP_ERROR_HPP_
#define SONARMAP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sonarmap {

// Malformed or inconsistent input data: bad dimensions, values outside a
// type's invariants, mismatched frame/pose counts.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sonarmap

#endif  // SONARMAP_ERROR_HPP_
