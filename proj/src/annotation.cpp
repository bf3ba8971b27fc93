#include "pci/annotation.hpp"

#include "pci/labels.hpp"

#include <algorithm>

namespace pci {

std::string_view to_string(KeywordKind kind) {
    return kind == KeywordKind::ExtractedTerm ? "extracted" : "paraphrase";
}

void AnnotationStore::add_asset(MediaAsset asset) {
    if (asset.duration_ms <= 0) {
        throw Error(ErrorCode::SegmentBounds, "asset " + asset.id + " has a non-positive duration");
    }
    if (assets_.count(asset.id)) {
        throw Error(ErrorCode::DuplicateAsset, "duplicate asset " + asset.id);
    }
    std::string id = asset.id;
    assets_.emplace(std::move(id), std::move(asset));
}

const MediaAsset* AnnotationStore::asset(std::string_view id) const {
    auto it = assets_.find(id);
    return it == assets_.end() ? nullptr : &it->second;
}

const SegmentAnnotation* AnnotationStore::annotation(std::string_view id) const {
    auto it = annotations_.find(id);
    return it == annotations_.end() ? nullptr : &it->second;
}

void AnnotationStore::insert(SegmentAnnotation a) {
    if (annotations_.count(a.id)) {
        throw Error(ErrorCode::DuplicateAnnotation, "duplicate annotation " + a.id);
    }
    std::string id = a.id;
    annotations_.emplace(std::move(id), std::move(a));
}

std::string AnnotationStore::next_id() const {
    for (std::size_t n = annotations_.size() + 1;; ++n) {
        std::string id = "a" + std::to_string(n);
        if (!annotations_.count(id)) return id;
    }
}

ValidationReport validate_annotation(const AnnotationStore& store, const SegmentAnnotation& a,
                                     const IndexingContext& ctx) {
    ValidationReport report;
    const std::string subject = a.id.empty() ? std::string("-") : a.id;
    const Vocabulary& v = ctx.vocabulary;

    if (!a.id.empty() && !text::is_bare_name(a.id)) {
        report.add(Severity::Error, ErrorCode::Syntax, subject, "malformed annotation id");
    }
    const MediaAsset* asset = store.asset(a.segment.asset_id);
    if (!asset) {
        report.add(Severity::Error, ErrorCode::UnknownAsset, subject,
                   "asset " + a.segment.asset_id + " is not registered");
    }
    const auto& seg = a.segment;
    if (seg.start_ms < 0 || seg.start_ms >= seg.end_ms ||
        (asset && seg.end_ms > asset->duration_ms)) {
        report.add(Severity::Error, ErrorCode::SegmentBounds, subject,
                   "segment " + std::to_string(seg.start_ms) + "-" + std::to_string(seg.end_ms) +
                       " is outside the asset or empty");
    }

    if (a.graph.kind() != GraphKind::Narrative) {
        report.add(Severity::Error, ErrorCode::InvalidGraphKind, subject,
                   "annotation graphs must be narrative, got " +
                       std::string(to_string(a.graph.kind())));
    }
    const ValidationReport graph_report = check_well_formed(a.graph, v, ctx.controlled);
    for (const auto& f : graph_report.findings()) {
        report.add(f.severity, f.code, subject + ":" + f.subject, f.message, f.line);
    }

    const auto pragmatic = v.find(TypeKind::Theme, labels::kPragmaticDescription);
    for (TypeId mark : a.marks) {
        const bool ok = mark.kind() == TypeKind::Theme && v.contains(mark) && pragmatic &&
                        v.subsumes(*pragmatic, mark);
        if (!ok) {
            report.add(Severity::Error, ErrorCode::InvalidMark, subject,
                       "mark " + mark.str() + " is not a Pragmatic Description theme");
        }
    }

    for (const auto& k : a.keywords) {
        if (text::trim(k.text).empty()) {
            report.add(Severity::Error, ErrorCode::InvalidReferent, subject, "empty keyword");
            continue;
        }
        if (k.text.find_first_of("\r\n") != std::string::npos) {
            report.add(Severity::Error, ErrorCode::Syntax, subject, "keyword contains a line break");
        }
        if (!text::is_language_tag(k.language)) {
            report.add(Severity::Error, ErrorCode::Syntax, subject,
                       "malformed keyword language '" + k.language + "'");
        }
        if (k.controlled && ctx.controlled &&
            !ctx.controlled->contains(*k.controlled, k.text, k.language)) {
            report.add(Severity::Error, ErrorCode::ControlledTermMiss, subject,
                       text::quote(k.text) + "@" + k.language + " is not in " + *k.controlled);
        }
    }
    for (const auto& [lang, fields] : a.fields) {
        if (!text::is_language_tag(lang)) {
            report.add(Severity::Error, ErrorCode::Syntax, subject,
                       "malformed field language '" + lang + "'");
        }
        if (!fields.title && !fields.summary) {
            report.add(Severity::Error, ErrorCode::Syntax, subject,
                       "field entry for " + lang + " has neither title nor summary");
        }
        for (const auto* value : {&fields.title, &fields.summary}) {
            if (*value && (*value)->find_first_of("\r\n") != std::string::npos) {
                report.add(Severity::Error, ErrorCode::Syntax, subject,
                           "field text contains a line break");
            }
        }
    }
    return report;
}

std::string add_annotation(AnnotationStore& store, SegmentAnnotation a,
                           const IndexingContext& ctx) {
    if (a.id.empty()) a.id = store.next_id();
    ValidationReport report = validate_annotation(store, a, ctx);
    if (store.annotation(a.id)) {
        report.add(Severity::Error, ErrorCode::DuplicateAnnotation, a.id,
                   "annotation id already in the store");
    }
    if (report.has_errors()) {
        const auto& first = *std::find_if(report.findings().begin(), report.findings().end(),
                                          [](const Finding& f) {
                                              return f.severity == Severity::Error;
                                          });
        throw ValidationFailure(first.code, "annotation " + a.id + " rejected: " + first.message,
                                std::move(report));
    }
    std::string id = a.id;
    store.insert(std::move(a));
    return id;
}

ValidationReport validate_store(const AnnotationStore& store, const IndexingContext& ctx) {
    ValidationReport report;
    for (const auto& [id, a] : store.annotations()) {
        report.append(validate_annotation(store, a, ctx));
    }
    return report;
}

} // namespace pci
