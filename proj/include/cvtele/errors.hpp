// Copyright 2026 The cvtele Authors
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

namespace cvtele {

/// A physical parameter is outside its admissible range (negative variance,
/// efficiency above one, uncertainty-violating source, ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// The API was called in a way its contract forbids (mismatched bases,
/// pairing on a measured mode, ...).
class UsageError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// The closed-form oracle was asked about a configuration it does not cover.
class OracleScopeError : public UsageError {
   public:
    using UsageError::UsageError;
};

/// Signal transfer is undefined because the input carries no signal.
class UndefinedTransferError : public DomainError {
   public:
    using DomainError::DomainError;
};

/// Inputs are inconsistent with any output of the linear teleporter model.
class ModelViolationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace cvtele
