#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pci {

/// An approved term list (ISO 639-2 language names, peoples, ...). Entries
/// are NFC-normalized (term, language) pairs.
class ControlledVocabulary {
public:
    ControlledVocabulary() = default;
    explicit ControlledVocabulary(std::string name, std::string source_note = {});

    const std::string& name() const noexcept { return name_; }
    const std::string& source_note() const noexcept { return source_note_; }
    const std::set<std::pair<std::string, std::string>>& entries() const noexcept {
        return entries_;
    }

    /// Adds an entry; returns false if the pair was already present.
    /// Throws Error(Syntax) for an empty term or malformed language tag.
    bool add(std::string_view term, std::string_view language);

    /// found iff (NFC(term), language) is an entry. The empty term never is.
    bool contains(std::string_view term, std::string_view language) const;
    /// As above, ignoring the language.
    bool contains_any_language(std::string_view term) const;

    friend bool operator==(const ControlledVocabulary&, const ControlledVocabulary&) = default;

private:
    std::string name_;
    std::string source_note_;
    std::set<std::pair<std::string, std::string>> entries_;
};

/// `cv "<name>"` header, optional `note "<text>"`, then `term <lang> "<text>"`
/// lines. The name must be a bare token so graphs can refer to it as `!name`.
ControlledVocabulary parse_controlled_vocabulary(std::string_view text);
std::string serialize_controlled_vocabulary(const ControlledVocabulary& cv);

enum class LookupResult { Found, Miss };

LookupResult lookup_keyword(const ControlledVocabulary& cv, std::string_view term,
                            std::string_view language);

class ControlledVocabularySet {
public:
    void add(ControlledVocabulary cv);
    const ControlledVocabulary* find(std::string_view name) const;
    std::size_t size() const noexcept { return by_name_.size(); }
    std::vector<std::string> names() const;

    /// Language-less lookups match an entry in any language.
    bool contains(std::string_view vocabulary, std::string_view term,
                  const std::optional<std::string>& language) const;

private:
    std::map<std::string, ControlledVocabulary, std::less<>> by_name_;
};

} // namespace pci
