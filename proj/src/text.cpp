#include "pci/text.hpp"

#include "pci/error.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <fstream>
#include <sstream>
#include <system_error>

namespace pci::text {

bool is_valid_utf8(std::string_view bytes) {
    const auto* s = reinterpret_cast<const std::uint8_t*>(bytes.data());
    const auto length = static_cast<std::int32_t>(bytes.size());
    std::int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            return false;
        }
    }
    return true;
}

std::string nfc(std::string_view utf8) {
    if (!is_valid_utf8(utf8)) {
        throw Error(ErrorCode::Syntax, "invalid UTF-8");
    }
    bool ascii = true;
    for (unsigned char c : utf8) {
        if (c >= 0x80) {
            ascii = false;
            break;
        }
    }
    if (ascii) {
        return std::string(utf8);
    }
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
        throw Error(ErrorCode::Io, "ICU NFC normalizer unavailable");
    }
    auto source = icu::UnicodeString::fromUTF8(
        icu::StringPiece(utf8.data(), static_cast<std::int32_t>(utf8.size())));
    icu::UnicodeString normalized = normalizer->normalize(source, status);
    if (U_FAILURE(status)) {
        throw Error(ErrorCode::Syntax, "NFC normalization failed");
    }
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string quote(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::vector<Token> tokenize(std::string_view line, int line_number) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        Token token;
        token.column = static_cast<int>(i) + 1;
        bool in_quotes = false;
        while (i < line.size()) {
            char c = line[i];
            if (!in_quotes && (c == ' ' || c == '\t')) {
                break;
            }
            if (c == '"') {
                in_quotes = !in_quotes;
            } else if (c == '\\' && in_quotes) {
                if (i + 1 >= line.size()) {
                    break;
                }
                token.text += c;
                ++i;
                c = line[i];
            }
            token.text += c;
            ++i;
        }
        if (in_quotes) {
            throw Error(ErrorCode::Syntax, "unterminated string", line_number, token.column);
        }
        tokens.push_back(std::move(token));
    }
    return tokens;
}

std::string unquote(std::string_view token, int line_number, int column) {
    if (token.size() < 2 || token.front() != '"' || token.back() != '"') {
        throw Error(ErrorCode::Syntax, "expected a quoted string", line_number, column);
    }
    std::string out;
    for (std::size_t i = 1; i + 1 < token.size(); ++i) {
        char c = token[i];
        if (c == '\\') {
            ++i;
            if (i + 1 >= token.size() || (token[i] != '"' && token[i] != '\\')) {
                throw Error(ErrorCode::Syntax, "invalid escape sequence", line_number,
                            column + static_cast<int>(i));
            }
            c = token[i];
        } else if (c == '"') {
            throw Error(ErrorCode::Syntax, "unescaped quote inside string", line_number,
                        column + static_cast<int>(i));
        }
        out += c;
    }
    return nfc(out);
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> items;
    std::string current;
    bool in_quotes = false;
    for (std::size_t i = 0; i < value.size(); ++i) {
        char c = value[i];
        if (c == '\\' && in_quotes && i + 1 < value.size()) {
            current += c;
            current += value[++i];
            continue;
        }
        if (c == '"') {
            in_quotes = !in_quotes;
        }
        if (c == ',' && !in_quotes) {
            items.push_back(std::move(current));
            current.clear();
            continue;
        }
        current += c;
    }
    items.push_back(std::move(current));
    return items;
}

LineCursor::LineCursor(std::string_view document) {
    int number = 0;
    std::size_t start = 0;
    while (start <= document.size()) {
        auto end = document.find('\n', start);
        if (end == std::string_view::npos) {
            end = document.size();
        }
        ++number;
        auto raw = document.substr(start, end - start);
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        const auto first = raw.find_first_not_of(" \t");
        if (first != std::string_view::npos && raw[first] != '#') {
            auto content = raw.substr(first);
            const auto last = content.find_last_not_of(" \t");
            lines_.push_back(Line{content.substr(0, last + 1), number});
        }
        if (end == document.size()) {
            break;
        }
        start = end + 1;
    }
    last_line_ = number;
}

bool is_bare_name(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-' || c == ':';
        if (!ok) {
            return false;
        }
    }
    return true;
}

bool is_language_tag(std::string_view s) {
    if (s.size() < 2 || s.size() > 3) {
        return false;
    }
    for (char c : s) {
        if (c < 'a' || c > 'z') {
            return false;
        }
    }
    return true;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::Io, "error while reading " + path.string());
    }
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(ErrorCode::Io, "error while writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot replace " + path.string() + ": " + ec.message());
    }
}

} // namespace pci::text
