#include "cli.hpp"

#include "pci/annotation.hpp"
#include "pci/bundled.hpp"
#include "pci/projection.hpp"
#include "pci/vocabulary.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

namespace pci::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
    std::string vocab;
    std::string store;
    std::string data_dir;
};

/// Everything a command may check against.
struct Context {
    Vocabulary vocabulary;
    std::vector<Template> templates;
    ControlledVocabularySet controlled;
};

fs::path data_dir(const GlobalOptions& g) {
    return g.data_dir.empty() ? default_data_dir() : fs::path(g.data_dir);
}

Context load_context(const GlobalOptions& g) {
    const fs::path dir = data_dir(g);
    if (g.vocab.empty()) {
        BundledData bundled = load_bundled(dir);
        return Context{std::move(bundled.vocabulary), std::move(bundled.templates),
                       std::move(bundled.controlled)};
    }
    Context ctx{parse_vocabulary(text::read_file(g.vocab)), {}, {}};
    if (fs::is_directory(dir / "cv")) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir / "cv")) {
            if (entry.path().extension() == ".cv") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) ctx.controlled.add(parse_controlled_vocabulary(text::read_file(f)));
    }
    return ctx;
}

const std::string& require_store(const GlobalOptions& g) {
    if (g.store.empty()) throw Error(ErrorCode::Io, "--store is required");
    return g.store;
}

int findings_status(const ValidationReport& report) {
    return report.has_errors() ? kFindings : kOk;
}

// Semantic rejections are findings; malformed or unreadable input is usage.
int status_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::UnknownType:
        case ErrorCode::KindMismatch:
        case ErrorCode::ArityMismatch:
        case ErrorCode::SignatureViolation:
        case ErrorCode::MissingTopic:
        case ErrorCode::MisplacedTopic:
        case ErrorCode::InvalidMark:
        case ErrorCode::InvalidReferent:
        case ErrorCode::StructureDrift:
            return kFindings;
        default:
            return kUsage;
    }
}

int cmd_validate(const GlobalOptions& g, std::ostream& out) {
    const fs::path path = g.vocab.empty() ? data_dir(g) / "pci.vocab" : fs::path(g.vocab);
    const VocabularyDraft draft = parse_vocabulary_document(text::read_file(path));
    const ValidationReport report = validate_vocabulary(draft);
    out << report.to_text();
    return findings_status(report);
}

int cmd_lint(const GlobalOptions& g, std::ostream& out) {
    const fs::path path = g.vocab.empty() ? data_dir(g) / "pci.vocab" : fs::path(g.vocab);
    const VocabularyDraft draft = parse_vocabulary_document(text::read_file(path));
    const ValidationReport errors = validate_vocabulary(draft);
    if (errors.has_errors()) {
        out << errors.to_text();
        return kFindings;
    }
    out << lint_labels(Vocabulary::build(draft)).to_text();
    return kOk;
}

int cmd_graph_check(const GlobalOptions& g, const std::string& graph_path, std::ostream& out) {
    const Context ctx = load_context(g);
    const ConceptualGraph graph = parse_graph(text::read_file(graph_path));
    const ValidationReport report = check_well_formed(graph, ctx.vocabulary, &ctx.controlled);
    out << report.to_text();
    return findings_status(report);
}

int cmd_ingest(const GlobalOptions& g, const std::string& input, std::ostream& out) {
    const Context ctx = load_context(g);
    const fs::path store_path = require_store(g);
    IngestBatch batch = parse_ingest(text::read_file(input));

    StoreWriteLock lock(store_path);
    AnnotationStore store = fs::exists(store_path) ? load_store(store_path) : AnnotationStore{};
    try {
        const auto ids = ingest(store, std::move(batch),
                                IndexingContext{ctx.vocabulary, &ctx.controlled});
        save_store(store, store_path);
        out << "ingested " << ids.size() << "\n";
        return kOk;
    } catch (const ValidationFailure& failure) {
        out << failure.report().to_text();
        return kFindings;
    }
}

int cmd_query(const GlobalOptions& g, const std::string& query_path, bool explain, bool topic,
              unsigned threads, std::ostream& out) {
    const Context ctx = load_context(g);
    const AnnotationStore store = load_store(require_store(g));
    const ConceptualGraph query = parse_graph(text::read_file(query_path));
    const ValidationReport report = check_well_formed(query, ctx.vocabulary);
    if (report.has_errors()) {
        out << report.to_text();
        return kFindings;
    }
    AnswerOptions options;
    options.scope = topic ? QueryScope::Topic : QueryScope::Outer;
    options.threads = threads;
    out << format_results(answer_query(query, store, ctx.vocabulary, options), explain);
    return kOk;
}

int cmd_instantiate(const GlobalOptions& g, const std::string& template_id,
                    const std::vector<std::string>& fills, std::ostream& out, std::ostream& err) {
    const Context ctx = load_context(g);
    auto it = std::find_if(ctx.templates.begin(), ctx.templates.end(),
                           [&](const Template& t) { return t.id == template_id; });
    if (it == ctx.templates.end()) {
        err << "error: unknown template " << template_id << "\n";
        return kUsage;
    }
    std::map<std::string, Filler> fillers;
    for (const auto& spec : fills) {
        auto [slot, filler] = parse_filler(spec);
        fillers[slot] = std::move(filler);
    }
    out << serialize_graph(instantiate_template(*it, fillers, &ctx.controlled));
    return kOk;
}

int cmd_catalog(const GlobalOptions& g, std::ostream& out) {
    const Context ctx = load_context(g);
    const fs::path store_path = require_store(g);
    const AnnotationStore store = load_store(store_path);
    out << format_catalog(catalog(store, ctx.vocabulary), ctx.vocabulary);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conceptual-graph indexing of time-coded media segments", "pci"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--vocab", g.vocab, "Vocabulary file (default: bundled)");
    app.add_option("--store", g.store, "Annotation store file");
    app.add_option("--data-dir", g.data_dir, "Bundled data directory (default: $PCI_DATA_DIR)");

    auto* validate = app.add_subcommand("validate", "Check a vocabulary file");
    auto* lint = app.add_subcommand("lint", "Report label style warnings");

    std::string graph_path;
    auto* graph_check = app.add_subcommand("graph-check", "Check a graph file");
    graph_check->add_option("graph", graph_path)->required();

    std::string ingest_path;
    auto* ingest_cmd = app.add_subcommand("ingest", "Add annotations to the store");
    ingest_cmd->add_option("annotations", ingest_path)->required();

    std::string query_path;
    bool explain = false;
    bool topic = false;
    unsigned threads = 0;
    auto* query = app.add_subcommand("query", "Find annotations a query graph projects into");
    query->add_option("query", query_path)->required();
    query->add_flag("--explain", explain, "Print every mapping");
    query->add_flag("--topic", topic, "Match inside Discourse Topic nestings");
    query->add_option("--threads", threads, "Worker threads (0: all cores)");

    std::string template_id;
    std::vector<std::string> fills;
    auto* instantiate = app.add_subcommand("instantiate", "Fill a template's slots");
    instantiate->add_option("template", template_id)->required();
    instantiate->add_option("--fill", fills, "slot=value[@lang][!vocabulary]");

    auto* catalog_cmd = app.add_subcommand("catalog", "Summarize the store by group and theme");

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(g, out);
        if (lint->parsed()) return cmd_lint(g, out);
        if (graph_check->parsed()) return cmd_graph_check(g, graph_path, out);
        if (ingest_cmd->parsed()) return cmd_ingest(g, ingest_path, out);
        if (query->parsed()) return cmd_query(g, query_path, explain, topic, threads, out);
        if (instantiate->parsed()) return cmd_instantiate(g, template_id, fills, out, err);
        if (catalog_cmd->parsed()) return cmd_catalog(g, out);
    } catch (const ValidationFailure& failure) {
        out << failure.report().to_text();
        err << "error: " << failure.what() << "\n";
        return kFindings;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return status_for(e);
    }
    return kUsage;
}

} // namespace pci::cli
