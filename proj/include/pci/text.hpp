#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pci::text {

/// Unicode NFC normalization. Throws Error(Syntax) on malformed UTF-8.
std::string nfc(std::string_view utf8);

bool is_valid_utf8(std::string_view bytes);

std::string trim(std::string_view s);

/// Wraps `s` in double quotes, escaping `"` and `\`.
std::string quote(std::string_view s);

struct Token {
    std::string text;
    int column = 1; // 1-based
};

/// Splits a line on whitespace; double-quoted sections (with `\"` and `\\`
/// escapes) may contain spaces and stay inside their token.
std::vector<Token> tokenize(std::string_view line, int line_number);

/// Undoes `quote`. `token` must start and end with `"`.
std::string unquote(std::string_view token, int line_number, int column);

/// Splits on commas that are not inside quotes.
std::vector<std::string> split_list(std::string_view value);

/// A line of a text document with its 1-based number. Blank lines and lines
/// whose first non-blank character is `#` are dropped; leading indentation
/// is stripped.
struct Line {
    std::string_view content;
    int number = 0;
};

class LineCursor {
public:
    explicit LineCursor(std::string_view document);

    bool done() const { return pos_ >= lines_.size(); }
    const Line& peek() const { return lines_[pos_]; }
    const Line& next() { return lines_[pos_++]; }
    int last_line_number() const { return last_line_; }

private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    int last_line_ = 0;
};

/// True for tokens usable as bare names: [A-Za-z0-9_.:-]+.
bool is_bare_name(std::string_view s);

/// True for language tags: 2 or 3 lowercase ASCII letters.
bool is_language_tag(std::string_view s);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file renamed into place.
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace pci::text
