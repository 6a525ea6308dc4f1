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

#include "droidrisk/error.hpp"

namespace droidrisk {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAZip: return "NotAZip";
    case ErrorCode::TruncatedArchive: return "TruncatedArchive";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::UnsupportedCompression: return "UnsupportedCompression";
    case ErrorCode::Zip64Unsupported: return "Zip64Unsupported";
    case ErrorCode::EntryNotFound: return "EntryNotFound";
    case ErrorCode::CrcMismatch: return "CrcMismatch";
    case ErrorCode::BadDeflateStream: return "BadDeflateStream";
    case ErrorCode::NotAManifest: return "NotAManifest";
    case ErrorCode::StringPoolOutOfBounds: return "StringPoolOutOfBounds";
    case ErrorCode::UnterminatedElement: return "UnterminatedElement";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::ReverseEndianUnsupported: return "ReverseEndianUnsupported";
    case ErrorCode::IndexOutOfTable: return "IndexOutOfTable";
    case ErrorCode::TruncatedDex: return "TruncatedDex";
    case ErrorCode::InvalidWatchlist: return "InvalidWatchlist";
    case ErrorCode::CapTooSmall: return "CapTooSmall";
    case ErrorCode::ManifestMissing: return "ManifestMissing";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyNode: return "EmptyNode";
    case ErrorCode::SingleClassTraining: return "SingleClassTraining";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::FormatVersionUnsupported: return "FormatVersionUnsupported";
    case ErrorCode::CorruptModel: return "CorruptModel";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::SingleClassLabels: return "SingleClassLabels";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ModelLoadFailure: return "ModelLoadFailure";
    case ErrorCode::NoTargets: return "NoTargets";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
  }
  return "UnknownError";
}

}  // namespace droidrisk
