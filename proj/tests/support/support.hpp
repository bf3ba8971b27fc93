#pragma once

// Test-only helpers: hand-rolled random generators, an exhaustive projection
// oracle and an invariant checker for mappings. None of them reuse the
// library's subsumption index or search code.

#include "pci/annotation.hpp"
#include "pci/graph.hpp"
#include "pci/projection.hpp"
#include "pci/vocabulary.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pci::testing {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi); // inclusive
bool chance(Rng& rng, double p);

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

struct VocabShape {
    int concepts = 20;
    int relations = 6;
    int nestings = 2;
    double extra_parent = 0.3; // chance of a second parent (DAG, not tree)
};

/// A valid draft with ids T-1.., R-1.., C-1.. and random DAG parents.
VocabularyDraft random_draft(Rng& rng, const VocabShape& shape);
Vocabulary random_vocabulary(Rng& rng, const VocabShape& shape);

/// Syntactically rich draft for round-trip tests: id-less types, label
/// references, signatures, notes with escapes. Not necessarily valid.
VocabularyDraft random_document(Rng& rng);

/// Printable NFC text with quotes, backslashes and non-ASCII letters.
std::string random_text(Rng& rng, int max_length);

struct GraphShape {
    int max_nodes = 6;
    int max_edges = 5;
    int depth = 2; // nesting levels below the outer graph
    double nest_chance = 0.35;
    double individual_chance = 0.35;
    bool allow_root_types = false;
};

/// Random graph whose types come from `v`; edges respect declared arity.
ConceptualGraph random_graph(Rng& rng, const Vocabulary& v, const GraphShape& shape);

/// Random query biased towards matching `target`: a generalized sub-part of
/// it, sometimes with extra nodes or edges.
ConceptualGraph random_query_for(Rng& rng, const Vocabulary& v, const ConceptualGraph& target,
                                 const GraphShape& shape);

AnnotationStore random_store(Rng& rng, const Vocabulary& v);

/// Reflexive-transitive closure of the declared parent links, computed by
/// plain graph search.
class Closure {
public:
    explicit Closure(const Vocabulary& v);
    bool subsumes(TypeId general, TypeId specific) const;
    /// Strict ancestors of `t`, root included, ascending by id.
    std::vector<TypeId> strict_ancestors(TypeId t) const;

private:
    const Vocabulary& v_;
};

/// Counts projections by enumerating every concept-node map at each level.
/// Throws Error(SizeLimit) when a target level has more than 8 nodes.
std::uint64_t count_projections_oracle(const ConceptualGraph& query,
                                       const ConceptualGraph& target, const Vocabulary& v);

/// Every violated mapping invariant, empty when `m` is a valid projection.
std::vector<std::string> check_mapping(const ConceptualGraph& query, const ConceptualGraph& target,
                                       const Vocabulary& v, const ProjectionMapping& m);

/// Replaces the type of the query node at `path` by `type`.
ConceptualGraph with_node_type(const ConceptualGraph& g, const NodePath& path, TypeId type);

/// Paths of every node at every level.
std::vector<NodePath> all_paths(const ConceptualGraph& g);

} // namespace pci::testing
