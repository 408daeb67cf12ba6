// Copyright 2026 The tweetprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tweetprep {

// Exit-code class a failure maps to at the CLI boundary.
enum class ErrorClass { kUsage = 1, kData = 2, kIo = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const noexcept { return class_; }

 private:
  ErrorClass class_;
};

#define TWEETPREP_DEFINE_ERROR(Name, Cls)                              \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(Cls, what) {}      \
  };

TWEETPREP_DEFINE_ERROR(BadConfig, ErrorClass::kUsage)
TWEETPREP_DEFINE_ERROR(IoFailure, ErrorClass::kIo)
TWEETPREP_DEFINE_ERROR(DataError, ErrorClass::kData)

#undef TWEETPREP_DEFINE_ERROR

#define TWEETPREP_DEFINE_DATA_ERROR(Name)                             \
  class Name : public DataError {                                     \
   public:                                                            \
    explicit Name(const std::string& what) : DataError(what) {}       \
  };

TWEETPREP_DEFINE_DATA_ERROR(DomainUnparseable)
TWEETPREP_DEFINE_DATA_ERROR(EmptyCorpus)
TWEETPREP_DEFINE_DATA_ERROR(VocabTooSmall)
TWEETPREP_DEFINE_DATA_ERROR(UnknownId)
TWEETPREP_DEFINE_DATA_ERROR(ClassTooSmall)
TWEETPREP_DEFINE_DATA_ERROR(UnknownDataset)
TWEETPREP_DEFINE_DATA_ERROR(LengthMismatch)
TWEETPREP_DEFINE_DATA_ERROR(EmptyInput)
TWEETPREP_DEFINE_DATA_ERROR(FormatError)

#undef TWEETPREP_DEFINE_DATA_ERROR

}  // namespace tweetprep
