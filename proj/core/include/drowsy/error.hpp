#pragma once

#include <stdexcept>
#include <string>

namespace drowsy {

enum class ErrorKind {
    MissingColumn,
    MalformedRow,
    TruncatedRecord,
    DimensionMismatch,
    LengthMismatch,
    UnparseablePath,
    DuplicateRecording,
    InvalidCount,
    SeriesTooShort,
    InvalidScale,
    EmptyTrack,
    MissingHog,
    EmptyWindow,
    DimMismatch,
    SingleClassData,
    EmptyMatrix,
    UnknownLabel,
    InsufficientFrames,
    Io,
    Format,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::MissingColumn: return "MissingColumn";
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::TruncatedRecord: return "TruncatedRecord";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::UnparseablePath: return "UnparseablePath";
        case ErrorKind::DuplicateRecording: return "DuplicateRecording";
        case ErrorKind::InvalidCount: return "InvalidCount";
        case ErrorKind::SeriesTooShort: return "SeriesTooShort";
        case ErrorKind::InvalidScale: return "InvalidScale";
        case ErrorKind::EmptyTrack: return "EmptyTrack";
        case ErrorKind::MissingHog: return "MissingHog";
        case ErrorKind::EmptyWindow: return "EmptyWindow";
        case ErrorKind::DimMismatch: return "DimMismatch";
        case ErrorKind::SingleClassData: return "SingleClassData";
        case ErrorKind::EmptyMatrix: return "EmptyMatrix";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::InsufficientFrames: return "InsufficientFrames";
        case ErrorKind::Io: return "Io";
        case ErrorKind::Format: return "Format";
    }
    return "Unknown";
}

/// Domain error carrying a machine-readable kind plus a human message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace drowsy
