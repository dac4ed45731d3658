// Copyright (c) 2026 The livseg Authors
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

#ifndef LIVSEG__ERROR_HPP_
#define LIVSEG__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace livseg
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define LIVSEG_DEFINE_ERROR(Name) \
  class Name : public Error \
  { \
public: \
    using Error::Error; \
  }

// raster I/O
LIVSEG_DEFINE_ERROR(MalformedHeader);
LIVSEG_DEFINE_ERROR(TruncatedData);
LIVSEG_DEFINE_ERROR(UnsupportedMaxval);
LIVSEG_DEFINE_ERROR(IoFailure);

// parameters
LIVSEG_DEFINE_ERROR(InvalidBand);
LIVSEG_DEFINE_ERROR(TooSmall);
LIVSEG_DEFINE_ERROR(InvalidWindow);
LIVSEG_DEFINE_ERROR(InvalidConfig);
LIVSEG_DEFINE_ERROR(DimensionMismatch);

// segmentation outcomes
LIVSEG_DEFINE_ERROR(NoForeground);
LIVSEG_DEFINE_ERROR(EmptySampleSet);
LIVSEG_DEFINE_ERROR(EmptyCorpus);

#undef LIVSEG_DEFINE_ERROR

}  // namespace livseg

#endif  // LIVSEG__ERROR_HPP_
