// Copyright 2026 The swissrank Authors
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

#ifndef SWISSRANK_ERROR_HPP_
#define SWISSRANK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace swissrank {

// Root of every error raised by the library. The CLI maps all of these to
// exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SWISSRANK_DEFINE_ERROR(Name)  \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

SWISSRANK_DEFINE_ERROR(ParseError);
SWISSRANK_DEFINE_ERROR(DomainError);
SWISSRANK_DEFINE_ERROR(DuplicateModelError);
SWISSRANK_DEFINE_ERROR(DuplicateDatasetError);
SWISSRANK_DEFINE_ERROR(UnknownModelError);
SWISSRANK_DEFINE_ERROR(UnknownDatasetError);
SWISSRANK_DEFINE_ERROR(MissingScoreError);
SWISSRANK_DEFINE_ERROR(DimensionMismatchError);
SWISSRANK_DEFINE_ERROR(InstanceTooLargeError);
SWISSRANK_DEFINE_ERROR(InactiveModelError);
SWISSRANK_DEFINE_ERROR(EmptyQuestionError);
SWISSRANK_DEFINE_ERROR(IoError);

#undef SWISSRANK_DEFINE_ERROR

}  // namespace swissrank

#endif  // SWISSRANK_ERROR_HPP_
