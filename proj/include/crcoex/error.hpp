// SPDX-License-Identifier: Apache-2.0
//
// crcoex - downlink multi-beam cognitive radio coexistence simulator
// Copyright (C) 2026 crcoex contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace crcoex
{

/// Invalid scenario data, beam index, or configuration value.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number of the offending row.
class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string &msg, long line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line)
    {
    }
    long line() const noexcept { return line_; }

  private:
    long line_;
};

/// A 2^B enumeration would exceed the configured cap.
class CapacityError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace crcoex
