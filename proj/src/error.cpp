#include "pci/error.hpp"
#include "pci/report.hpp"

#include <algorithm>
#include <sstream>

namespace pci {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax: return "syntax";
        case ErrorCode::Io: return "io";
        case ErrorCode::MissingRoot: return "missing-root";
        case ErrorCode::DuplicateId: return "duplicate-id";
        case ErrorCode::DuplicateLabel: return "duplicate-label";
        case ErrorCode::UnknownReference: return "unknown-reference";
        case ErrorCode::Cycle: return "cycle";
        case ErrorCode::ArityMismatch: return "arity-mismatch";
        case ErrorCode::SignatureMismatch: return "signature-mismatch";
        case ErrorCode::UnknownType: return "unknown-type";
        case ErrorCode::KindMismatch: return "kind-mismatch";
        case ErrorCode::UnknownNode: return "unknown-node";
        case ErrorCode::DuplicateNode: return "duplicate-node";
        case ErrorCode::DuplicateNesting: return "duplicate-nesting";
        case ErrorCode::SignatureViolation: return "signature-violation";
        case ErrorCode::MissingTopic: return "missing-topic";
        case ErrorCode::MisplacedTopic: return "misplaced-topic";
        case ErrorCode::EmptyNesting: return "empty-nesting";
        case ErrorCode::InvalidReferent: return "invalid-referent";
        case ErrorCode::ControlledTermMiss: return "controlled-term-miss";
        case ErrorCode::UnknownSlot: return "unknown-slot";
        case ErrorCode::UnknownAsset: return "unknown-asset";
        case ErrorCode::DuplicateAsset: return "duplicate-asset";
        case ErrorCode::DuplicateAnnotation: return "duplicate-annotation";
        case ErrorCode::SegmentBounds: return "segment-bounds";
        case ErrorCode::InvalidMark: return "invalid-mark";
        case ErrorCode::InvalidGraphKind: return "invalid-graph-kind";
        case ErrorCode::SizeLimit: return "size-limit";
        case ErrorCode::Checksum: return "checksum";
        case ErrorCode::StructureDrift: return "structure-drift";
        case ErrorCode::LabelStyle: return "label-style";
    }
    return "unknown";
}

namespace {

std::string with_location(const std::string& message, int line, int column) {
    if (line <= 0) {
        return message;
    }
    std::ostringstream os;
    os << "line " << line;
    if (column > 0) {
        os << ", column " << column;
    }
    os << ": " << message;
    return os.str();
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, int line, int column)
    : std::runtime_error(with_location(message, line, column)),
      code_(code),
      line_(line),
      column_(column) {}

std::string_view to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

void ValidationReport::add(Severity severity, ErrorCode code, std::string subject,
                           std::string message, int line) {
    findings_.push_back(Finding{severity, code, std::move(subject), std::move(message), line});
}

void ValidationReport::append(const ValidationReport& other) {
    findings_.insert(findings_.end(), other.findings_.begin(), other.findings_.end());
}

std::size_t ValidationReport::errors() const {
    return static_cast<std::size_t>(std::count_if(
        findings_.begin(), findings_.end(),
        [](const Finding& f) { return f.severity == Severity::Error; }));
}

std::size_t ValidationReport::warnings() const { return findings_.size() - errors(); }

std::size_t ValidationReport::count(ErrorCode code) const {
    return static_cast<std::size_t>(std::count_if(
        findings_.begin(), findings_.end(), [code](const Finding& f) { return f.code == code; }));
}

std::size_t ValidationReport::count(Severity severity, ErrorCode code) const {
    return static_cast<std::size_t>(
        std::count_if(findings_.begin(), findings_.end(), [&](const Finding& f) {
            return f.code == code && f.severity == severity;
        }));
}

std::string ValidationReport::to_text() const {
    std::string out;
    for (const auto& f : findings_) {
        out += to_string(f.severity);
        out += ' ';
        out += f.subject.empty() ? "-" : f.subject;
        out += ' ';
        out += f.message;
        out += '\n';
    }
    return out;
}

ValidationFailure::ValidationFailure(ErrorCode code, const std::string& message,
                                     ValidationReport report)
    : Error(code, message), report_(std::move(report)) {}

} // namespace pci
