/*
   Copyright 2026 The novikov-gysin Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NOVIKOV_ERRORS_HPP
#define NOVIKOV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace novikov {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// Operation needs more known terms than the inputs carry.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a field but got Integers, or inverted zero.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A map term has grade shift inside a forbidden window such as [eps, 2 eps).
class GapViolation : public Error {
 public:
  using Error::Error;
};

class NotAChainMap : public Error {
 public:
  using Error::Error;
};

class NotADifferential : public Error {
 public:
  using Error::Error;
};

/// A structural precondition failed (unknown label, shape mismatch, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace novikov

#endif  // NOVIKOV_ERRORS_HPP
