// Copyright 2026 The Kagome VQE Authors
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

namespace kagome {

// Thrown when an operation is called on an object in the wrong state, e.g.
// simulating a circuit that still has unbound parameter slots.
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedGate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense routines refuse problems whose Hilbert space would not fit in memory.
class SizeLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace kagome
