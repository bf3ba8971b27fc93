#include "pci/controlled_vocabulary.hpp"

#include "pci/error.hpp"
#include "pci/text.hpp"

namespace pci {

ControlledVocabulary::ControlledVocabulary(std::string name, std::string source_note)
    : name_(std::move(name)), source_note_(std::move(source_note)) {}

bool ControlledVocabulary::add(std::string_view term, std::string_view language) {
    std::string normalized = text::nfc(term);
    if (text::trim(normalized).empty()) {
        throw Error(ErrorCode::Syntax, "controlled term must not be empty");
    }
    if (!text::is_language_tag(language)) {
        throw Error(ErrorCode::Syntax, "malformed language tag '" + std::string(language) + "'");
    }
    return entries_.emplace(std::move(normalized), std::string(language)).second;
}

bool ControlledVocabulary::contains(std::string_view term, std::string_view language) const {
    if (term.empty() || !text::is_valid_utf8(term)) return false;
    return entries_.count({text::nfc(term), std::string(language)}) > 0;
}

bool ControlledVocabulary::contains_any_language(std::string_view term) const {
    if (term.empty() || !text::is_valid_utf8(term)) return false;
    const std::string normalized = text::nfc(term);
    auto it = entries_.lower_bound({normalized, std::string()});
    return it != entries_.end() && it->first == normalized;
}

ControlledVocabulary parse_controlled_vocabulary(std::string_view input) {
    text::LineCursor cursor(input);
    if (cursor.done()) throw Error(ErrorCode::Syntax, "empty controlled vocabulary", 1);
    const auto& header = cursor.next();
    auto head = text::tokenize(header.content, header.number);
    if (head.size() != 2 || head[0].text != "cv" || head[1].text.front() != '"') {
        throw Error(ErrorCode::Syntax, "expected: cv \"<name>\"", header.number, 1);
    }
    std::string name = text::unquote(head[1].text, header.number, head[1].column);
    if (!text::is_bare_name(name)) {
        throw Error(ErrorCode::Syntax, "controlled vocabulary name must be a bare token",
                    header.number, head[1].column);
    }
    ControlledVocabulary cv;
    std::string note;
    std::vector<std::pair<std::string, std::string>> terms;
    while (!cursor.done()) {
        const auto& line = cursor.next();
        auto tokens = text::tokenize(line.content, line.number);
        if (tokens[0].text == "note" && tokens.size() == 2 && terms.empty() && note.empty()) {
            note = text::unquote(tokens[1].text, line.number, tokens[1].column);
        } else if (tokens[0].text == "term" && tokens.size() == 3 &&
                   tokens[2].text.front() == '"') {
            if (!text::is_language_tag(tokens[1].text)) {
                throw Error(ErrorCode::Syntax, "malformed language tag", line.number,
                            tokens[1].column);
            }
            auto term = text::unquote(tokens[2].text, line.number, tokens[2].column);
            if (text::trim(term).empty()) {
                throw Error(ErrorCode::Syntax, "empty term", line.number, tokens[2].column);
            }
            terms.emplace_back(std::move(term), tokens[1].text);
        } else {
            throw Error(ErrorCode::Syntax, "expected: term <lang> \"<text>\"", line.number, 1);
        }
    }
    cv = ControlledVocabulary(std::move(name), std::move(note));
    for (const auto& [term, lang] : terms) cv.add(term, lang);
    return cv;
}

std::string serialize_controlled_vocabulary(const ControlledVocabulary& cv) {
    std::string out = "cv " + text::quote(cv.name()) + "\n";
    if (!cv.source_note().empty()) out += "note " + text::quote(cv.source_note()) + "\n";
    for (const auto& [term, lang] : cv.entries()) {
        out += "term " + lang + " " + text::quote(term) + "\n";
    }
    return out;
}

LookupResult lookup_keyword(const ControlledVocabulary& cv, std::string_view term,
                            std::string_view language) {
    return cv.contains(term, language) ? LookupResult::Found : LookupResult::Miss;
}

void ControlledVocabularySet::add(ControlledVocabulary cv) {
    std::string name = cv.name();
    by_name_.insert_or_assign(std::move(name), std::move(cv));
}

const ControlledVocabulary* ControlledVocabularySet::find(std::string_view name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &it->second;
}

std::vector<std::string> ControlledVocabularySet::names() const {
    std::vector<std::string> out;
    for (const auto& [name, cv] : by_name_) out.push_back(name);
    return out;
}

bool ControlledVocabularySet::contains(std::string_view vocabulary, std::string_view term,
                                       const std::optional<std::string>& language) const {
    const ControlledVocabulary* cv = find(vocabulary);
    if (!cv) return false;
    return language ? cv->contains(term, *language) : cv->contains_any_language(term);
}

} // namespace pci
