#pragma once

#include "pci/report.hpp"
#include "pci/type_id.hpp"

#include <boost/dynamic_bitset.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pci {

/// Reference to another type in a vocabulary document: either a rendered id
/// (`T-12`) or, for types that have no id yet, the quoted label.
using TypeRef = std::variant<TypeId, std::string>;

std::string to_string(const TypeRef& ref);

/// One declaration line of a vocabulary document, before resolution.
struct TypeDecl {
    TypeKind kind = TypeKind::Theme;
    std::optional<TypeId> id;
    std::string label;
    std::vector<TypeRef> parents; // empty: child of the hierarchy root
    int arity = 0;                // relations only
    std::optional<std::vector<TypeRef>> signature; // relations only
    std::optional<std::string> note;               // concepts only
    int line = 0;

    friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

/// Syntactic content of a vocabulary file. Not validated.
struct VocabularyDraft {
    std::string root_label;
    std::vector<TypeDecl> types;

    friend bool operator==(const VocabularyDraft&, const VocabularyDraft&) = default;
};

struct VocabularyOptions {
    /// Child relation signatures must specialize their parent's slot by slot.
    bool signature_covariance = true;
};

/// Parses the vocabulary grammar without semantic checks.
/// Throws Error(Syntax | MissingRoot) with line and column.
VocabularyDraft parse_vocabulary_document(std::string_view text);

/// Reports every violated type invariant of a draft. Never throws.
ValidationReport validate_vocabulary(const VocabularyDraft& draft,
                                     const VocabularyOptions& options = {});

/// Canonical text: root line, then concepts, relations and nestings, each in
/// id order (id-less types last, by label). Exactly one space between tokens.
std::string serialize_vocabulary(const VocabularyDraft& draft);

/// A resolved type inside a Vocabulary. Indices are dense positions within
/// the type's own hierarchy; index 0 is the hierarchy root.
struct TypeInfo {
    TypeKind kind = TypeKind::Theme;
    std::optional<TypeId> id;
    std::string label;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> children; // ascending label order
    int arity = 0;
    std::optional<std::vector<std::size_t>> signature; // indices into the concept hierarchy
    std::optional<std::string> note;
};

/// The three typed hierarchies (concept, relation, nesting) with a
/// precomputed subsumption index. Immutable once built; safe to share
/// between threads.
class Vocabulary {
public:
    /// Validates and resolves a draft. Throws Error carrying the code and line
    /// of the first error finding.
    static Vocabulary build(const VocabularyDraft& draft, const VocabularyOptions& options = {});

    const std::string& root_label() const noexcept { return root_label_; }

    /// Number of types of a kind, including the hierarchy root.
    std::size_t size(TypeKind kind) const noexcept { return types_[index(kind)].size(); }
    const TypeInfo& info(TypeKind kind, std::size_t position) const;
    const std::vector<TypeInfo>& types(TypeKind kind) const { return types_[index(kind)]; }

    std::optional<std::size_t> position(TypeId id) const;
    std::optional<std::size_t> position(TypeKind kind, std::string_view label) const;
    bool contains(TypeId id) const { return position(id).has_value(); }

    const TypeInfo& info(TypeId id) const; // throws Error(UnknownType)
    std::optional<TypeId> find(TypeKind kind, std::string_view label) const;
    std::vector<TypeId> children(TypeId id) const;

    /// True iff `general` is `specific` or reachable from it through parent
    /// links. Throws Error(UnknownType) or Error(KindMismatch).
    bool subsumes(TypeId general, TypeId specific) const;
    bool subsumes(TypeKind kind, std::size_t general, std::size_t specific) const;

    /// Minimal common subsumers of two same-kind types, ascending by id.
    std::vector<TypeId> least_common_subsumers(TypeId a, TypeId b) const;
    std::vector<std::size_t> least_common_subsumers(TypeKind kind, std::size_t a,
                                                    std::size_t b) const;

    /// Canonical declarations; references use ids where the target has one.
    VocabularyDraft to_draft() const;

    /// Subsumers of a type as a bitset over positions (the type included).
    const boost::dynamic_bitset<>& ancestors(TypeKind kind, std::size_t position) const;

private:
    static std::size_t index(TypeKind kind) { return static_cast<std::size_t>(kind); }
    std::size_t require(TypeId id) const;

    std::string root_label_;
    std::array<std::vector<TypeInfo>, 3> types_;
    std::array<std::vector<boost::dynamic_bitset<>>, 3> ancestors_;
};

Vocabulary parse_vocabulary(std::string_view text, const VocabularyOptions& options = {});
ValidationReport validate_vocabulary(const Vocabulary& v, const VocabularyOptions& options = {});
std::string serialize_vocabulary(const Vocabulary& v);

/// Gives every id-less type an id. Existing ids are kept; new ones are
/// handed out depth-first from the root, children in ascending label order,
/// each taking the smallest unused number of its kind.
Vocabulary assign_identifiers(const Vocabulary& v);

/// Mechanical label style checks. Produces warnings only.
ValidationReport lint_labels(const Vocabulary& v);

} // namespace pci
