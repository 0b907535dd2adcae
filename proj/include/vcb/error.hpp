#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The vcbundle Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <stdexcept>
#include <string>

namespace vcb {

/// Malformed or out-of-contract input (CLI exit code 1).
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Instance is larger than the exact algorithms are configured to handle (exit code 2).
class BudgetExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A mathematical invariant that must hold was observed to fail (exit code 3).
class InvariantViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

}  // namespace vcb
