#pragma once

#include "pci/graph.hpp"
#include "pci/vocabulary.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pci {

class AnnotationStore;
struct NestedProjection;

/// A projection of a query graph level into a target graph level. Two
/// mappings are the same projection when their concept maps and nested maps
/// agree; the edge map records the smallest target edge witnessing each query
/// edge and is fully determined by the concept map.
struct ProjectionMapping {
    std::vector<std::pair<NodeId, NodeId>> concept_map;       // ascending query node
    std::vector<std::pair<std::size_t, std::size_t>> edge_map; // query edge index -> target edge index
    std::vector<NestedProjection> nested; // ascending (query node, query nesting type)

    NodeId image(NodeId query_node) const;
};

struct NestedProjection {
    NodeId query_node;
    TypeId query_nesting;
    TypeId target_nesting;
    ProjectionMapping mapping;
};

bool operator==(const ProjectionMapping& a, const ProjectionMapping& b);
bool operator<(const ProjectionMapping& a, const ProjectionMapping& b);
bool operator==(const NestedProjection& a, const NestedProjection& b);
bool operator<(const NestedProjection& a, const NestedProjection& b);

/// Every projection of `query` into `target`, sorted. Query nodes map to
/// target nodes whose type they subsume; individual query referents require
/// an equal keyword (and language, when the query gives one); query edges map
/// to target edges of a subsumed relation type with the mapped arguments;
/// query nestings map into target nestings of a subsumed nesting type.
/// Throws Error(UnknownType) when either graph uses a type `v` lacks.
std::vector<ProjectionMapping> project(const ConceptualGraph& query, const ConceptualGraph& target,
                                       const Vocabulary& v);

/// Number of projections, without materializing them.
std::uint64_t count_projections(const ConceptualGraph& query, const ConceptualGraph& target,
                                const Vocabulary& v);

enum class QueryScope {
    Outer, // the query matches annotation graphs from their outermost level
    Topic, // the query matches inside the Discourse Topic of a Discourse Type node
};

struct AnswerOptions {
    QueryScope scope = QueryScope::Outer;
    unsigned threads = 0; // 0: hardware concurrency
};

struct QueryResult {
    std::string annotation_id;
    std::string asset_id;
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    std::vector<ProjectionMapping> mappings;
    std::size_t match_count = 0;

    friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

/// Wraps a query as the topic of a generic Discourse Type node. Throws
/// Error(UnknownType) if the vocabulary lacks Discourse Type or Discourse Topic.
ConceptualGraph topic_query(const ConceptualGraph& query, const Vocabulary& v);

/// One result per annotation with at least one projection, ordered by match
/// count (descending) then annotation id. Annotations are evaluated in
/// parallel; the output is identical to a sequential run.
std::vector<QueryResult> answer_query(const ConceptualGraph& query, const AnnotationStore& store,
                                      const Vocabulary& v, const AnswerOptions& options = {});

/// `match <annotationId> <assetId> <startMs>-<endMs> count=<n>` per result;
/// with `explain`, each mapping follows as indented `concept`, `edge` and
/// `nest` lines.
std::string format_results(const std::vector<QueryResult>& results, bool explain = false);
std::string format_mapping(const ProjectionMapping& m, int indent);

} // namespace pci
