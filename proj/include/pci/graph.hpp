#pragma once

#include "pci/report.hpp"
#include "pci/text.hpp"
#include "pci/type_id.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pci {

class Vocabulary;
class ControlledVocabularySet;

enum class GraphKind { Topical, Narrative, Pragmatic, Unspecified };

std::string_view to_string(GraphKind kind);
std::optional<GraphKind> parse_graph_kind(std::string_view text);

/// Local identifier of a concept node, unique within one graph level.
struct NodeId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// The value attached to a theme: `*` (generic) or a keyword (individual).
/// Keywords are NFC-normalized and compared case-sensitively; the language
/// tag is part of the identity.
struct Referent {
    enum class Kind { Generic, Individual };

    Kind kind = Kind::Generic;
    std::string keyword;
    std::optional<std::string> language;
    std::optional<std::string> vocabulary; // controlled source; free when empty

    static Referent generic() { return {}; }
    static Referent individual(std::string_view keyword,
                               std::optional<std::string> language = std::nullopt,
                               std::optional<std::string> vocabulary = std::nullopt);

    bool is_generic() const { return kind == Kind::Generic; }

    friend bool operator==(const Referent&, const Referent&) = default;
};

struct RelationEdge {
    TypeId type;
    std::vector<NodeId> args;

    friend bool operator==(const RelationEdge&, const RelationEdge&) = default;
};

struct ConceptNode;
struct Nesting;

/// Bipartite graph of concept nodes and ordered relation edges. Nodes are
/// kept in ascending id order; edges in insertion order. Each node may carry
/// inner graphs, one per nesting type, with their own id scope.
class ConceptualGraph {
public:
    explicit ConceptualGraph(GraphKind kind = GraphKind::Unspecified);

    GraphKind kind() const noexcept { return kind_; }
    void set_kind(GraphKind kind) noexcept { kind_ = kind; }

    /// Appends a node with a fresh id (one past the largest in use).
    NodeId add_concept(TypeId type, Referent referent);
    /// Inserts a node with a caller-chosen id. Throws Error(DuplicateNode).
    void insert_concept(ConceptNode node);

    /// Throws Error(UnknownNode) if an argument does not resolve and
    /// Error(ArityMismatch) for an empty argument list.
    std::size_t add_relation(TypeId type, std::vector<NodeId> args);
    /// As above, and Error(ArityMismatch) against the declared arity.
    std::size_t add_relation(TypeId type, std::vector<NodeId> args, const Vocabulary& v);

    /// Throws Error(UnknownNode) or Error(DuplicateNesting).
    void attach_nesting(NodeId node, TypeId nesting_type, ConceptualGraph inner);

    const std::vector<ConceptNode>& nodes() const noexcept { return nodes_; }
    const std::vector<RelationEdge>& edges() const noexcept { return edges_; }
    bool empty() const noexcept { return nodes_.empty() && edges_.empty(); }

    const ConceptNode* find(NodeId id) const;
    ConceptNode* find(NodeId id);
    std::optional<std::size_t> index_of(NodeId id) const;

    friend bool operator==(const ConceptualGraph& a, const ConceptualGraph& b);

private:
    GraphKind kind_;
    std::vector<ConceptNode> nodes_;
    std::vector<RelationEdge> edges_;
};

struct ConceptNode {
    NodeId id;
    TypeId type;
    Referent referent;
    std::vector<Nesting> nestings; // ascending nesting type

    const Nesting* nesting(TypeId type) const;

    friend bool operator==(const ConceptNode& a, const ConceptNode& b);
};

struct Nesting {
    TypeId type;
    ConceptualGraph graph;

    friend bool operator==(const Nesting& a, const Nesting& b);
};

/// Address of a node possibly inside nestings: `3`, `1/C-1/2`.
struct NodePath {
    std::vector<std::pair<NodeId, TypeId>> nesting_steps;
    NodeId node;

    static std::optional<NodePath> parse(std::string_view text);
    std::string str() const;

    friend bool operator==(const NodePath&, const NodePath&) = default;
};

const ConceptNode* find_node(const ConceptualGraph& g, const NodePath& path);
ConceptNode* find_node(ConceptualGraph& g, const NodePath& path);

// ---------------------------------------------------------------------------
// Text format

/// `graph <kind>` header, node lines in id order, rel lines in insertion
/// order, then nest blocks; nested bodies indented by two spaces.
std::string serialize_graph(const ConceptualGraph& g, int indent = 0);

/// Parses a standalone graph document. Throws Error(Syntax | DuplicateNode |
/// UnknownNode | DuplicateNesting) with the line of the offending statement.
ConceptualGraph parse_graph(std::string_view text);

std::string format_referent(const Referent& r);

/// Reads `graph <kind>` and its body from `cursor` until a line equal to
/// `terminator` (consumed) or, when the terminator is empty, end of input.
ConceptualGraph read_graph(text::LineCursor& cursor, std::string_view terminator);

// ---------------------------------------------------------------------------
// Checks and normalization

/// Reports unknown types, arity and signature violations, Discourse Topic
/// obligations, misplaced topics, empty nestings and controlled-keyword
/// misses, recursing into every nesting. Controlled referents are only
/// checked when `vocabularies` is given.
ValidationReport check_well_formed(const ConceptualGraph& g, const Vocabulary& v,
                                   const ControlledVocabularySet* vocabularies = nullptr);

/// Merges same-level nodes with identical (type, keyword, language)
/// individual referents. Edges are redirected and deduplicated; nestings of
/// the same type are joined as a disjoint union. Generic nodes never merge.
ConceptualGraph merge_coreferent(const ConceptualGraph& g);

/// Total number of concept nodes over all levels.
std::size_t total_nodes(const ConceptualGraph& g);

} // namespace pci
