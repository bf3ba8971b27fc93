#include "pci/vocabulary.hpp"

#include "pci/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>

namespace pci {

namespace {

constexpr std::array<std::string_view, 9> kStopWords = {"a",  "an",  "the", "of",  "and",
                                                        "or", "for", "in",  "with"};

// Present-tense forms that do not end in `s`.
constexpr std::array<std::string_view, 9> kVerbAllowlist = {
    "Are", "Have", "Do", "Can", "May", "Must", "Shall", "Will", "Belong"};

std::vector<std::string_view> words(std::string_view label) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < label.size()) {
        while (i < label.size() && label[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < label.size() && label[i] != ' ') ++i;
        if (i > start) out.push_back(label.substr(start, i - start));
    }
    return out;
}

/// First alphabetic code point of a word, or a negative value if none.
UChar32 first_letter(std::string_view word) {
    const auto* s = reinterpret_cast<const std::uint8_t*>(word.data());
    const auto length = static_cast<std::int32_t>(word.size());
    std::int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(s, i, length, c);
        if (c >= 0 && u_isUAlphabetic(c)) return c;
    }
    return -1;
}

bool capitalized(UChar32 c) { return u_isupper(c) || u_istitle(c); }

bool is_stop_word(std::string_view word) {
    return std::find(kStopWords.begin(), kStopWords.end(), word) != kStopWords.end();
}

std::string subject_of(const TypeInfo& info) {
    return info.id ? info.id->str() : text::quote(info.label);
}

void check_title_case(const TypeInfo& info, ValidationReport& report) {
    for (auto word : words(info.label)) {
        const UChar32 c = first_letter(word);
        if (c < 0 || is_stop_word(word)) continue;
        if (!capitalized(c)) {
            report.add(Severity::Warning, ErrorCode::LabelStyle, subject_of(info),
                       "title case: word '" + std::string(word) + "' in " +
                           text::quote(info.label) + " is not capitalized");
            return;
        }
    }
}

void check_plural(const TypeInfo& info, ValidationReport& report) {
    const auto& label = info.label;
    if (label.size() >= 2 && label.back() == 's' && label[label.size() - 2] != 's') {
        report.add(Severity::Warning, ErrorCode::LabelStyle, subject_of(info),
                   "possibly plural: " + text::quote(label) + " should be singular");
    }
}

void check_verb_phrase(const TypeInfo& info, ValidationReport& report) {
    auto ws = words(info.label);
    bool ok = false;
    if (!ws.empty()) {
        const auto head = ws.front();
        const UChar32 c = first_letter(head);
        const bool allowed = std::find(kVerbAllowlist.begin(), kVerbAllowlist.end(), head) !=
                             kVerbAllowlist.end();
        ok = c >= 0 && capitalized(c) && (head.back() == 's' || allowed);
    }
    if (!ok) {
        report.add(Severity::Warning, ErrorCode::LabelStyle, subject_of(info),
                   "verb phrase: " + text::quote(info.label) +
                       " does not start with a capitalized present-tense verb");
    }
}

} // namespace

ValidationReport lint_labels(const Vocabulary& v) {
    ValidationReport report;
    const auto& concepts = v.types(TypeKind::Theme);
    for (std::size_t p = 1; p < concepts.size(); ++p) {
        check_title_case(concepts[p], report);
        check_plural(concepts[p], report);
    }
    const auto& relations = v.types(TypeKind::Relation);
    for (std::size_t p = 1; p < relations.size(); ++p) {
        check_verb_phrase(relations[p], report);
    }
    const auto& nestings = v.types(TypeKind::Nesting);
    for (std::size_t p = 1; p < nestings.size(); ++p) {
        check_title_case(nestings[p], report);
    }
    return report;
}

} // namespace pci
