#pragma once

#include "pci/controlled_vocabulary.hpp"
#include "pci/graph.hpp"
#include "pci/report.hpp"
#include "pci/vocabulary.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pci {

struct MediaAsset {
    std::string id;
    std::int64_t duration_ms = 0;
    std::string uri;
    std::vector<std::string> languages; // ISO 639 codes

    friend bool operator==(const MediaAsset&, const MediaAsset&) = default;
};

struct Segment {
    std::string asset_id;
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class KeywordKind { ExtractedTerm, Paraphrase };

struct Keyword {
    std::string text;
    std::string language;
    KeywordKind kind = KeywordKind::ExtractedTerm;
    std::optional<std::string> controlled; // vocabulary name; free keyword when empty

    friend bool operator==(const Keyword&, const Keyword&) = default;
};

struct LocalizedFields {
    std::optional<std::string> title;
    std::optional<std::string> summary;

    friend bool operator==(const LocalizedFields&, const LocalizedFields&) = default;
};

/// Records which template an annotation was indexed with.
struct TemplateOrigin {
    std::string template_id;
    std::string group;

    friend bool operator==(const TemplateOrigin&, const TemplateOrigin&) = default;
};

struct SegmentAnnotation {
    std::string id; // assigned by add_annotation when empty
    Segment segment;
    std::map<std::string, LocalizedFields> fields; // by language
    std::vector<Keyword> keywords;
    ConceptualGraph graph{GraphKind::Narrative};
    std::vector<TypeId> marks; // pragmatic marks
    std::optional<TemplateOrigin> origin;

    friend bool operator==(const SegmentAnnotation&, const SegmentAnnotation&) = default;
};

/// Assets and annotations keyed by id. A loaded store is a plain value:
/// readers share it freely, writers go through add_annotation.
class AnnotationStore {
public:
    /// Throws Error(DuplicateAsset) or Error(SegmentBounds) for a
    /// non-positive duration.
    void add_asset(MediaAsset asset);
    const MediaAsset* asset(std::string_view id) const;
    const SegmentAnnotation* annotation(std::string_view id) const;

    const std::map<std::string, MediaAsset, std::less<>>& assets() const noexcept {
        return assets_;
    }
    const std::map<std::string, SegmentAnnotation, std::less<>>& annotations() const noexcept {
        return annotations_;
    }
    std::size_t size() const noexcept { return annotations_.size(); }

    /// Inserts without validation; add_annotation is the checked entry point.
    /// Throws Error(DuplicateAnnotation).
    void insert(SegmentAnnotation a);

    /// Smallest `a<N>` not yet used as an annotation id.
    std::string next_id() const;

    friend bool operator==(const AnnotationStore&, const AnnotationStore&) = default;

private:
    std::map<std::string, MediaAsset, std::less<>> assets_;
    std::map<std::string, SegmentAnnotation, std::less<>> annotations_;
};

/// What an annotation is checked against.
struct IndexingContext {
    const Vocabulary& vocabulary;
    const ControlledVocabularySet* controlled = nullptr;
};

/// Asset registration, segment bounds, graph well-formedness (Narrative),
/// pragmatic marks and keyword sources.
ValidationReport validate_annotation(const AnnotationStore& store, const SegmentAnnotation& a,
                                     const IndexingContext& ctx);

/// Validates and inserts `a`; returns its id. Throws ValidationFailure
/// carrying every error finding.
std::string add_annotation(AnnotationStore& store, SegmentAnnotation a,
                           const IndexingContext& ctx);

/// Re-validates every stored annotation.
ValidationReport validate_store(const AnnotationStore& store, const IndexingContext& ctx);

std::string_view to_string(KeywordKind kind);

// ---------------------------------------------------------------------------
// Store files

/// Header `pci-store v1`, assets then annotations, both in id order.
std::string serialize_store(const AnnotationStore& store);
/// Throws Error(Syntax | DuplicateAsset | DuplicateAnnotation | UnknownAsset).
AnnotationStore parse_store(std::string_view text);

/// Input of `ingest`: either a store document (header, assets, annotations)
/// or bare annotation blocks. Asset references are resolved at ingestion.
struct IngestBatch {
    std::vector<MediaAsset> assets;
    std::vector<SegmentAnnotation> annotations;
};
IngestBatch parse_ingest(std::string_view text);

/// Registers the batch's assets (identical re-declarations are accepted) and
/// adds every annotation. All or nothing: on any error finding `store` is
/// left untouched and ValidationFailure carries every finding.
std::vector<std::string> ingest(AnnotationStore& store, IngestBatch batch,
                                const IndexingContext& ctx);
std::string serialize_annotation(const SegmentAnnotation& a);

AnnotationStore load_store(const std::filesystem::path& path);
void save_store(const AnnotationStore& store, const std::filesystem::path& path);

/// Exclusive advisory lock on `<path>.lock`, held by a writer across its
/// load-modify-save cycle. Readers need none: save_store replaces the file
/// atomically.
class StoreWriteLock {
public:
    explicit StoreWriteLock(const std::filesystem::path& store_path);
    ~StoreWriteLock();
    StoreWriteLock(const StoreWriteLock&) = delete;
    StoreWriteLock& operator=(const StoreWriteLock&) = delete;

private:
    int fd_ = -1;
};

// ---------------------------------------------------------------------------
// Templates

struct TemplateGroupInfo {
    std::string_view slug;
    std::string_view name;
};

/// The four discourse-topic groups, in catalogue order.
const std::vector<TemplateGroupInfo>& template_groups();
bool is_known_group(std::string_view slug);

struct Template {
    std::string id;
    std::string name;
    std::string group; // slug; unknown groups are kept as text
    ConceptualGraph graph{GraphKind::Narrative};
    std::map<std::string, NodePath> slots;

    friend bool operator==(const Template&, const Template&) = default;
};

/// Every slot must address a generic node. Throws Error(UnknownSlot).
void check_template(const Template& t);

struct Filler {
    std::string keyword;
    std::optional<std::string> language;
    std::optional<std::string> vocabulary; // controlled source
};

/// Copy of the template graph with the named slots turned into individual
/// referents. Throws Error(UnknownSlot) or Error(ControlledTermMiss); a
/// controlled filler is checked only when `controlled` is given.
ConceptualGraph instantiate_template(const Template& t, const std::map<std::string, Filler>& fillers,
                                     const ControlledVocabularySet* controlled = nullptr);

/// `slot=value`, `slot=value@lang`, `slot=value@lang!vocab`.
std::pair<std::string, Filler> parse_filler(std::string_view spec);

/// Header `pci-templates v1`, then per template a `template <id> <group>
/// "<name>"` line, `slot <name> <path>` lines and a `graph ... endgraph` block.
std::vector<Template> parse_templates(std::string_view text);
std::string serialize_templates(const std::vector<Template>& templates);

// ---------------------------------------------------------------------------
// Catalogue

struct Catalog {
    std::size_t annotations = 0;
    std::vector<std::pair<std::string, std::size_t>> groups; // known groups first, then extras
    std::vector<std::pair<TypeId, std::size_t>> themes;      // World_PCI children in label order

    friend bool operator==(const Catalog&, const Catalog&) = default;
};

/// Annotations per template group, and per World_PCI child theme occurring
/// (directly or through a subtype) in some topic graph of the annotation.
Catalog catalog(const AnnotationStore& store, const Vocabulary& v);
std::string format_catalog(const Catalog& c, const Vocabulary& v);

} // namespace pci
