// Copyright 2026 The qstack Authors
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

#ifndef QSTACK_ERRORS_HPP_
#define QSTACK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qstack {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value is outside its domain (non-finite angle, p > 1, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A Kraus set fails sum E^dag E = I.
class NonCptpChannel : public Error {
 public:
  using Error::Error;
};

// A computed state left the density-matrix invariants.
class NumericalDegradation : public Error {
 public:
  using Error::Error;
};

// The maximizer of a payoff sits on the search bound and widening the bound
// did not resolve it.
class DomainExhausted : public Error {
 public:
  using Error::Error;
};

class NoThreshold : public Error {
 public:
  using Error::Error;
};

class NoCrossing : public Error {
 public:
  using Error::Error;
};

// A closed-form expression has a vanishing denominator.
class SingularConfiguration : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qstack

#endif  // QSTACK_ERRORS_HPP_
