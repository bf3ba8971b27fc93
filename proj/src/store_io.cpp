#include "pci/annotation.hpp"

#include <algorithm>
#include <charconv>
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace pci {
namespace {

constexpr std::string_view kStoreHeader = "pci-store v1";

std::int64_t parse_ms(const text::Token& token, int line) {
    const std::string& s = token.text;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
        (s.size() > 1 && (s[0] == '0' || s[0] == '-'))) {
        throw Error(ErrorCode::Syntax, "expected a non-negative integer, got '" + s + "'", line,
                    token.column);
    }
    return value;
}

void require_bare(const text::Token& token, int line, std::string_view what) {
    if (!text::is_bare_name(token.text)) {
        throw Error(ErrorCode::Syntax, "malformed " + std::string(what) + " '" + token.text + "'",
                    line, token.column);
    }
}

void require_quoted(const text::Token& token, int line) {
    if (token.text.size() < 2 || token.text.front() != '"') {
        throw Error(ErrorCode::Syntax, "expected a quoted string", line, token.column);
    }
}

void require_language(const text::Token& token, int line) {
    if (!text::is_language_tag(token.text)) {
        throw Error(ErrorCode::Syntax, "malformed language tag '" + token.text + "'", line,
                    token.column);
    }
}

MediaAsset parse_asset(const std::vector<text::Token>& t, int line) {
    if (t.size() != 4 && t.size() != 5) {
        throw Error(ErrorCode::Syntax, "expected: asset <id> <durationMs> \"<uri>\" [lang=..]",
                    line, 1);
    }
    require_bare(t[1], line, "asset id");
    require_quoted(t[3], line);
    MediaAsset asset;
    asset.id = t[1].text;
    asset.duration_ms = parse_ms(t[2], line);
    asset.uri = text::unquote(t[3].text, line, t[3].column);
    if (t.size() == 5) {
        if (t[4].text.rfind("lang=", 0) != 0) {
            throw Error(ErrorCode::Syntax, "expected lang=<codes>", line, t[4].column);
        }
        for (const auto& code : text::split_list(t[4].text.substr(5))) {
            if (!text::is_language_tag(code)) {
                throw Error(ErrorCode::Syntax, "malformed language tag '" + code + "'", line,
                            t[4].column);
            }
            asset.languages.push_back(code);
        }
    }
    return asset;
}

struct ParsedAnnotation {
    SegmentAnnotation annotation;
    int line = 0;
};

// Reads one `annotation` block; the header line has already been consumed.
ParsedAnnotation read_annotation(text::LineCursor& cursor, const text::Line& header) {
    auto t = text::tokenize(header.content, header.number);
    if (t.size() != 5) {
        throw Error(ErrorCode::Syntax,
                    "expected: annotation <id> <assetId> <startMs> <endMs>", header.number, 1);
    }
    require_bare(t[1], header.number, "annotation id");
    require_bare(t[2], header.number, "asset id");
    ParsedAnnotation out;
    out.line = header.number;
    SegmentAnnotation& a = out.annotation;
    a.id = t[1].text;
    a.segment.asset_id = t[2].text;
    a.segment.start_ms = parse_ms(t[3], header.number);
    a.segment.end_ms = parse_ms(t[4], header.number);

    while (true) {
        if (cursor.done()) {
            throw Error(ErrorCode::Syntax, "annotation " + a.id + " has no graph block",
                        cursor.last_line_number());
        }
        const text::Line& line = cursor.peek();
        auto f = text::tokenize(line.content, line.number);
        const std::string& head = f[0].text;
        if (head == "graph") {
            a.graph = read_graph(cursor, "endgraph");
            break;
        }
        cursor.next();
        const int n = line.number;
        if (head == "template" && f.size() == 3 && !a.origin && a.fields.empty() &&
            a.keywords.empty() && a.marks.empty()) {
            require_bare(f[1], n, "template id");
            require_bare(f[2], n, "group");
            a.origin = TemplateOrigin{f[1].text, f[2].text};
        } else if (head == "field" && f.size() == 4) {
            require_language(f[1], n);
            require_quoted(f[3], n);
            auto& slot = a.fields[f[1].text];
            std::optional<std::string>* target = nullptr;
            if (f[2].text == "title") target = &slot.title;
            if (f[2].text == "summary") target = &slot.summary;
            if (!target) throw Error(ErrorCode::Syntax, "expected title or summary", n, f[2].column);
            if (*target) throw Error(ErrorCode::Syntax, "duplicate field", n, f[2].column);
            *target = text::unquote(f[3].text, n, f[3].column);
        } else if (head == "keyword" && f.size() == 5) {
            require_language(f[1], n);
            require_quoted(f[4], n);
            Keyword k;
            k.language = f[1].text;
            if (f[2].text == "extracted") {
                k.kind = KeywordKind::ExtractedTerm;
            } else if (f[2].text == "paraphrase") {
                k.kind = KeywordKind::Paraphrase;
            } else {
                throw Error(ErrorCode::Syntax, "keyword kind must be extracted or paraphrase", n,
                            f[2].column);
            }
            if (f[3].text.rfind("ctrl:", 0) == 0 && text::is_bare_name(f[3].text.substr(5))) {
                k.controlled = f[3].text.substr(5);
            } else if (f[3].text != "free") {
                throw Error(ErrorCode::Syntax, "keyword source must be free or ctrl:<name>", n,
                            f[3].column);
            }
            k.text = text::unquote(f[4].text, n, f[4].column);
            a.keywords.push_back(std::move(k));
        } else if (head == "mark" && f.size() == 2) {
            auto id = TypeId::parse(f[1].text);
            if (!id) throw Error(ErrorCode::Syntax, "malformed type id", n, f[1].column);
            a.marks.push_back(*id);
        } else {
            throw Error(ErrorCode::Syntax, "unexpected line in annotation " + a.id, n, 1);
        }
    }
    return out;
}

std::string format_asset(const MediaAsset& asset) {
    std::string out = "asset " + asset.id + " " + std::to_string(asset.duration_ms) + " " +
                      text::quote(asset.uri);
    if (!asset.languages.empty()) {
        out += " lang=";
        for (std::size_t i = 0; i < asset.languages.size(); ++i) {
            if (i > 0) out += ',';
            out += asset.languages[i];
        }
    }
    return out + "\n";
}

} // namespace

std::string serialize_annotation(const SegmentAnnotation& a) {
    std::string out = "annotation " + a.id + " " + a.segment.asset_id + " " +
                      std::to_string(a.segment.start_ms) + " " + std::to_string(a.segment.end_ms) +
                      "\n";
    if (a.origin) out += "  template " + a.origin->template_id + " " + a.origin->group + "\n";
    for (const auto& [lang, f] : a.fields) {
        if (f.title) out += "  field " + lang + " title " + text::quote(*f.title) + "\n";
        if (f.summary) out += "  field " + lang + " summary " + text::quote(*f.summary) + "\n";
    }
    for (const auto& k : a.keywords) {
        out += "  keyword " + k.language + " " + std::string(to_string(k.kind)) + " " +
               (k.controlled ? "ctrl:" + *k.controlled : std::string("free")) + " " +
               text::quote(k.text) + "\n";
    }
    for (TypeId mark : a.marks) out += "  mark " + mark.str() + "\n";
    out += serialize_graph(a.graph, 2);
    out += "  endgraph\n";
    return out;
}

std::string serialize_store(const AnnotationStore& store) {
    std::string out(kStoreHeader);
    out += '\n';
    for (const auto& [id, asset] : store.assets()) out += format_asset(asset);
    for (const auto& [id, a] : store.annotations()) {
        out += '\n';
        out += serialize_annotation(a);
    }
    return out;
}

namespace {

struct Document {
    std::vector<std::pair<MediaAsset, int>> assets;
    std::vector<ParsedAnnotation> annotations;
};

Document read_document(text::LineCursor& cursor) {
    Document doc;
    while (!cursor.done()) {
        const text::Line& line = cursor.next();
        auto t = text::tokenize(line.content, line.number);
        if (t[0].text == "asset") {
            doc.assets.emplace_back(parse_asset(t, line.number), line.number);
        } else if (t[0].text == "annotation") {
            doc.annotations.push_back(read_annotation(cursor, line));
        } else {
            throw Error(ErrorCode::Syntax, "expected an asset or annotation line", line.number, 1);
        }
    }
    return doc;
}

bool has_store_header(const text::LineCursor& cursor) {
    return !cursor.done() && cursor.peek().content == kStoreHeader;
}

} // namespace

AnnotationStore parse_store(std::string_view input) {
    text::LineCursor cursor(input);
    if (!has_store_header(cursor)) {
        throw Error(ErrorCode::Syntax, "expected header '" + std::string(kStoreHeader) + "'",
                    cursor.done() ? 1 : cursor.peek().number, 1);
    }
    cursor.next();
    Document doc = read_document(cursor);
    AnnotationStore store;
    for (auto& [asset, line] : doc.assets) {
        try {
            store.add_asset(std::move(asset));
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), line, 1);
        }
    }
    for (auto& p : doc.annotations) {
        if (!store.asset(p.annotation.segment.asset_id)) {
            throw Error(ErrorCode::UnknownAsset,
                        "annotation " + p.annotation.id + " refers to unregistered asset " +
                            p.annotation.segment.asset_id,
                        p.line, 1);
        }
        if (store.annotation(p.annotation.id)) {
            throw Error(ErrorCode::DuplicateAnnotation, "duplicate annotation " + p.annotation.id,
                        p.line, 1);
        }
        store.insert(std::move(p.annotation));
    }
    return store;
}

IngestBatch parse_ingest(std::string_view input) {
    text::LineCursor cursor(input);
    if (has_store_header(cursor)) cursor.next();
    Document doc = read_document(cursor);
    IngestBatch batch;
    for (auto& [asset, line] : doc.assets) {
        if (asset.duration_ms <= 0) {
            throw Error(ErrorCode::SegmentBounds, "asset " + asset.id + " has a non-positive duration",
                        line, 1);
        }
        batch.assets.push_back(std::move(asset));
    }
    for (auto& p : doc.annotations) batch.annotations.push_back(std::move(p.annotation));
    return batch;
}

std::vector<std::string> ingest(AnnotationStore& store, IngestBatch batch,
                                const IndexingContext& ctx) {
    AnnotationStore next = store;
    ValidationReport report;
    for (auto& asset : batch.assets) {
        if (const MediaAsset* known = next.asset(asset.id)) {
            if (!(*known == asset)) {
                report.add(Severity::Error, ErrorCode::DuplicateAsset, asset.id,
                           "asset already registered with different data");
            }
            continue;
        }
        next.add_asset(std::move(asset));
    }
    std::vector<std::string> ids;
    for (auto& a : batch.annotations) {
        try {
            ids.push_back(add_annotation(next, std::move(a), ctx));
        } catch (const ValidationFailure& failure) {
            report.append(failure.report());
        }
    }
    if (report.has_errors()) {
        const auto& first = *std::find_if(report.findings().begin(), report.findings().end(),
                                          [](const Finding& f) {
                                              return f.severity == Severity::Error;
                                          });
        throw ValidationFailure(first.code, "ingestion rejected", std::move(report));
    }
    store = std::move(next);
    return ids;
}

AnnotationStore load_store(const std::filesystem::path& path) {
    return parse_store(text::read_file(path));
}

void save_store(const AnnotationStore& store, const std::filesystem::path& path) {
    text::write_file(path, serialize_store(store));
}

StoreWriteLock::StoreWriteLock(const std::filesystem::path& store_path) {
    const std::string lock_path = store_path.string() + ".lock";
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(ErrorCode::Io, "cannot open lock file " + lock_path);
    if (::flock(fd_, LOCK_EX) != 0) {
        ::close(fd_);
        throw Error(ErrorCode::Io, "cannot lock " + lock_path);
    }
}

StoreWriteLock::~StoreWriteLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

} // namespace pci
