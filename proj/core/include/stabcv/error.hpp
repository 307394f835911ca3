// Copyright 2026 The stabcv Authors
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

#ifndef STABCV_ERROR_HPP_
#define STABCV_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stabcv {

// Base of every exception thrown by the library. Precondition violations
// (bad sizes, out-of-range parameters) derive from InvalidArgument so callers
// can tell configuration mistakes apart from numerical failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The exact support of a scheme would exceed the configured enumeration cap.
class SupportTooLarge : public InvalidArgument {
 public:
  SupportTooLarge(std::string what, double requested, double cap)
      : InvalidArgument(std::move(what)), requested_(requested), cap_(cap) {}

  double requested() const noexcept { return requested_; }
  double cap() const noexcept { return cap_; }

 private:
  double requested_;
  double cap_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Coordinate descent stopped at the sweep limit; the last iterate is kept.
class NotConverged : public NumericalError {
 public:
  NotConverged(std::string what, std::vector<double> last_iterate,
               std::size_t sweeps)
      : NumericalError(std::move(what)),
        last_iterate_(std::move(last_iterate)),
        sweeps_(sweeps) {}

  const std::vector<double>& last_iterate() const noexcept {
    return last_iterate_;
  }
  std::size_t sweeps() const noexcept { return sweeps_; }

 private:
  std::vector<double> last_iterate_;
  std::size_t sweeps_;
};

// A refit inside a cross-validation loop failed; `fold` is the index of the
// training vector in the scheme's support.
class FoldError : public Error {
 public:
  FoldError(std::size_t fold, const std::string& cause)
      : Error("fold " + std::to_string(fold) + ": " + cause), fold_(fold) {}

  std::size_t fold() const noexcept { return fold_; }

 private:
  std::size_t fold_;
};

}  // namespace stabcv

#endif  // STABCV_ERROR_HPP_
