// Copyright 2026 The Phonosplit Authors.
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

namespace phonosplit {

// Base type for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Container / codec errors.
class MalformedRiff : public Error { public: using Error::Error; };
class UnsupportedFormat : public Error { public: using Error::Error; };
class TruncatedData : public Error { public: using Error::Error; };
class InvalidBlockSize : public Error { public: using Error::Error; };
class InconsistentDescriptor : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };
class SilentReference : public Error { public: using Error::Error; };

// Marker model / detection errors.
class IllegalTransition : public Error { public: using Error::Error; };
class WindowOutOfBounds : public Error { public: using Error::Error; };
class InvalidParams : public Error { public: using Error::Error; };

// Segmentation / filesystem errors.
class MarkerOverlap : public Error { public: using Error::Error; };
class IoFailure : public Error { public: using Error::Error; };

// Analysis harness errors.
class ConstructionFailed : public Error { public: using Error::Error; };
class InsufficientSizes : public Error { public: using Error::Error; };
class EmptyGrid : public Error { public: using Error::Error; };

// Configuration errors.
class ConfigError : public Error { public: using Error::Error; };

}  // namespace phonosplit
