// SPDX-License-Identifier: Apache-2.0
//
// vlcpath - visible light path loss modelling for vehicular links
// Copyright (C) 2026 The vlcpath Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vlcpath
{

// Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
  public:
    using Error::Error;
};

// Transmitter and receiver coincide, or the geometry is otherwise undefined.
class GeometryError : public Error
{
  public:
    using Error::Error;
};

// Incidence angle at or beyond the source half-power semi-angle.
class FieldOfViewError : public Error
{
  public:
    using Error::Error;
};

// Received power has no interior maximum (path loss exponent <= 0).
class UndefinedPeakError : public Error
{
  public:
    using Error::Error;
};

class ParseError : public Error
{
  public:
    ParseError(const std::string &what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class NonUniformTimestampsError : public Error
{
  public:
    using Error::Error;
};

class UnitMismatchError : public Error
{
  public:
    using Error::Error;
};

class EmptyTraceError : public Error
{
  public:
    using Error::Error;
};

class InsufficientPointsError : public Error
{
  public:
    using Error::Error;
};

// Regression design matrix is rank deficient (all distances equal).
class DegenerateDesignError : public Error
{
  public:
    using Error::Error;
};

class ConfigError : public Error
{
  public:
    using Error::Error;
};

} // namespace vlcpath
