#pragma once

#include "pci/error.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace pci {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

struct Finding {
    Severity severity = Severity::Error;
    ErrorCode code = ErrorCode::Syntax;
    std::string subject; // offending id, node path or label
    std::string message;
    int line = 0;
};

/// Findings are data, not failures. An empty report means every checked
/// invariant holds.
class ValidationReport {
public:
    void add(Severity severity, ErrorCode code, std::string subject, std::string message,
             int line = 0);
    void append(const ValidationReport& other);

    const std::vector<Finding>& findings() const noexcept { return findings_; }
    bool empty() const noexcept { return findings_.empty(); }
    std::size_t size() const noexcept { return findings_.size(); }

    std::size_t errors() const;
    std::size_t warnings() const;
    std::size_t count(ErrorCode code) const;
    std::size_t count(Severity severity, ErrorCode code) const;
    bool has_errors() const { return errors() > 0; }

    /// One finding per line: `<severity> <subject> <message>`.
    std::string to_text() const;

private:
    std::vector<Finding> findings_;
};

/// Thrown when an operation rejects its input because of error findings.
class ValidationFailure : public Error {
public:
    ValidationFailure(ErrorCode code, const std::string& message, ValidationReport report);

    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

} // namespace pci
