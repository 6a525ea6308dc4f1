/*
 * Copyright (C) 2026 The DroidRisk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace droidrisk {

// Every recoverable failure in the pipeline carries one of these codes.
// Parsers must fail with a typed Error on any malformed input; they never
// abort or read out of bounds.
enum class ErrorCode {
  // apk container
  NotAZip,
  TruncatedArchive,
  DuplicateEntry,
  UnsupportedCompression,
  Zip64Unsupported,
  EntryNotFound,
  CrcMismatch,
  BadDeflateStream,
  // manifest
  NotAManifest,
  StringPoolOutOfBounds,
  UnterminatedElement,
  // dex
  BadMagic,
  UnsupportedVersion,
  ReverseEndianUnsupported,
  IndexOutOfTable,
  TruncatedDex,
  InvalidWatchlist,
  // features
  CapTooSmall,
  ManifestMissing,
  LengthMismatch,
  // forest
  EmptyNode,
  SingleClassTraining,
  ShapeMismatch,
  // model store
  FormatVersionUnsupported,
  CorruptModel,
  IoError,
  // evaluation
  TooFewSamples,
  SingleClassLabels,
  // cli
  OutOfRange,
  ModelLoadFailure,
  NoTargets,
  WidthMismatch,
  EmptyCorpus,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace droidrisk
