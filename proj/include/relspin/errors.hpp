// Copyright 2026 The relspin Authors
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

namespace relspin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
   public:
    using Error::Error;
};

class NonHermitianInput : public Error {
   public:
    using Error::Error;
};

class OrderOutOfRange : public Error {
   public:
    using Error::Error;
};

class InvalidMass : public Error {
   public:
    using Error::Error;
};

class InvalidSpin : public Error {
   public:
    using Error::Error;
};

class InvalidSampleCount : public Error {
   public:
    using Error::Error;
};

/// The spin projection along the requested axis has a collapsed spectrum
/// (|alpha| == 0), so the normalized +-1 observable does not exist.
class DegenerateObservable : public Error {
   public:
    using Error::Error;
};

}  // namespace relspin
