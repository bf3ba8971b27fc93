#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pci {

enum class ErrorCode {
    Syntax,
    Io,
    MissingRoot,
    DuplicateId,
    DuplicateLabel,
    UnknownReference,
    Cycle,
    ArityMismatch,
    SignatureMismatch,
    UnknownType,
    KindMismatch,
    UnknownNode,
    DuplicateNode,
    DuplicateNesting,
    SignatureViolation,
    MissingTopic,
    MisplacedTopic,
    EmptyNesting,
    InvalidReferent,
    ControlledTermMiss,
    UnknownSlot,
    UnknownAsset,
    DuplicateAsset,
    DuplicateAnnotation,
    SegmentBounds,
    InvalidMark,
    InvalidGraphKind,
    SizeLimit,
    Checksum,
    StructureDrift,
    LabelStyle,
};

std::string_view to_string(ErrorCode code);

/// Base exception for the engine. Carries a machine-checkable code and, for
/// text formats, the 1-based line and column of the offending token.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, int line = 0, int column = 0);

    ErrorCode code() const noexcept { return code_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    ErrorCode code_;
    int line_;
    int column_;
};

} // namespace pci
