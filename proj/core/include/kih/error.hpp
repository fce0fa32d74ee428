// Copyright 2026 The kih authors
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

#ifndef KIH_ERROR_HPP
#define KIH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kih {

/// Malformed input: bad text, dimension mismatch, out-of-range index,
/// violated instance invariant. Maps to CLI exit code 4.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An explicit resource budget (search nodes, cutting rounds) ran out.
/// Never stands for a wrong answer. Maps to CLI exit code 3.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kih

#endif  // KIH_ERROR_HPP
