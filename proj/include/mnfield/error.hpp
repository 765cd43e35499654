// Copyright 2026 The mnfield Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MNFIELD_ERROR_HPP
#define MNFIELD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mnfield {

// Every failure raised by the library derives from Error. The kind() string
// is what the CLI prints and uses to pick an exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define MNFIELD_DEFINE_ERROR(Name, tag)                                     \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(tag, what) {}            \
  };

MNFIELD_DEFINE_ERROR(InvalidPrime, "invalid-prime")
MNFIELD_DEFINE_ERROR(InvalidInput, "invalid-input")
MNFIELD_DEFINE_ERROR(NoSuchRoot, "no-such-root")
MNFIELD_DEFINE_ERROR(DivisionByZero, "division-by-zero")
MNFIELD_DEFINE_ERROR(ContextMismatch, "context-mismatch")
MNFIELD_DEFINE_ERROR(PrecisionError, "precision-error")
MNFIELD_DEFINE_ERROR(NoRootInField, "no-root-in-field")
MNFIELD_DEFINE_ERROR(Divergence, "divergence")
MNFIELD_DEFINE_ERROR(NonIntegralExponent, "non-integral-exponent")
MNFIELD_DEFINE_ERROR(NoSolution, "no-solution")
MNFIELD_DEFINE_ERROR(UnsupportedRange, "unsupported-range")

#undef MNFIELD_DEFINE_ERROR

// A precision error caused by a hard storage limit; raising the working
// precision cannot help.
class CapacityError : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

}  // namespace mnfield

#endif  // MNFIELD_ERROR_HPP
