#include "pci/bundled.hpp"

#include "pci/labels.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <set>

#ifndef PCI_DATA_DIR
#define PCI_DATA_DIR "data"
#endif

namespace pci {

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("PCI_DATA_DIR"); env && *env) return env;
    return PCI_DATA_DIR;
}

std::string sha256_hex(std::string_view data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw Error(ErrorCode::Checksum, "SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

namespace {

struct ManifestEntry {
    std::string digest;
    std::string path;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir) {
    const std::string manifest = text::read_file(dir / "MANIFEST.sha256");
    std::vector<ManifestEntry> out;
    int number = 0;
    std::size_t start = 0;
    while (start < manifest.size()) {
        auto end = manifest.find('\n', start);
        if (end == std::string::npos) end = manifest.size();
        std::string_view line(manifest.data() + start, end - start);
        start = end + 1;
        ++number;
        if (line.empty()) continue;
        // sha256sum layout: 64 hex digits, two spaces, relative path
        if (line.size() < 67 || line.substr(64, 2) != "  ") {
            throw Error(ErrorCode::Syntax, "malformed manifest line", number, 1);
        }
        out.push_back({std::string(line.substr(0, 64)), std::string(line.substr(66))});
    }
    return out;
}

template <typename Fn>
void require(ValidationReport& report, bool ok, std::string subject, Fn message) {
    if (!ok) report.add(Severity::Error, ErrorCode::StructureDrift, std::move(subject), message());
}

std::set<std::string> child_labels(const Vocabulary& v, TypeId id) {
    std::set<std::string> out;
    for (TypeId child : v.children(id)) out.insert(v.info(child).label);
    return out;
}

void expect_children(ValidationReport& report, const Vocabulary& v, TypeKind kind,
                     std::string_view label, std::size_t expected) {
    auto id = label.empty() ? std::optional<TypeId>(TypeId::root(kind)) : v.find(kind, label);
    const std::string subject = label.empty() ? TypeId::root(kind).str() : std::string(label);
    if (!id) {
        report.add(Severity::Error, ErrorCode::StructureDrift, subject, "type is missing");
        return;
    }
    const std::size_t actual = v.children(*id).size();
    require(report, actual == expected, id->str(), [&] {
        return subject + " has " + std::to_string(actual) + " children, expected " +
               std::to_string(expected);
    });
}

void expect_members(ValidationReport& report, const Vocabulary& v, std::string_view parent,
                    const std::vector<std::string_view>& members) {
    auto id = v.find(TypeKind::Theme, parent);
    if (!id) {
        report.add(Severity::Error, ErrorCode::StructureDrift, std::string(parent),
                   "type is missing");
        return;
    }
    const auto labels = child_labels(v, *id);
    std::string missing;
    for (auto m : members) {
        if (!labels.count(std::string(m))) missing += (missing.empty() ? "" : ", ") + std::string(m);
    }
    require(report, missing.empty(), id->str(),
            [&] { return std::string(parent) + " lacks " + missing; });
}

} // namespace

void verify_manifest(const std::filesystem::path& dir) {
    for (const auto& entry : read_manifest(dir)) {
        const std::string actual = sha256_hex(text::read_file(dir / entry.path));
        if (actual != entry.digest) {
            throw Error(ErrorCode::Checksum, "checksum mismatch for " + entry.path);
        }
    }
}

ValidationReport verify_structure(const Vocabulary& v) {
    using namespace labels;
    ValidationReport report;
    expect_children(report, v, TypeKind::Theme, "", 3);
    expect_children(report, v, TypeKind::Theme, kDiscourseDescription, 5);
    expect_children(report, v, TypeKind::Theme, kWorldPci, 13);
    expect_children(report, v, TypeKind::Relation, "", 3);
    expect_children(report, v, TypeKind::Relation, "Situating Relation", 10);

    if (auto narrative = v.find(TypeKind::Relation, "Narrative Relation")) {
        const auto labels = child_labels(v, *narrative);
        const std::set<std::string> expected = {"Discourse relational", "Rhetorical relational"};
        require(report, labels == expected, narrative->str(), [] {
            return std::string("Narrative Relation must have exactly the children Discourse "
                               "relational and Rhetorical relational");
        });
    } else {
        report.add(Severity::Error, ErrorCode::StructureDrift, "Narrative Relation",
                   "type is missing");
    }

    const std::size_t nestings = v.size(TypeKind::Nesting) - 1;
    const bool has_topic = v.find(TypeKind::Nesting, kDiscourseTopic).has_value();
    if (!has_topic) {
        report.add(Severity::Error, ErrorCode::StructureDrift, std::string(kDiscourseTopic),
                   "nesting type is missing");
    } else if (nestings > 1) {
        report.add(Severity::Warning, ErrorCode::StructureDrift, TypeId::root(TypeKind::Nesting).str(),
                   std::to_string(nestings) + " nesting types, only " +
                       std::string(kDiscourseTopic) + " is expected");
    }

    auto actor = v.find(TypeKind::Theme, "Actor");
    auto group = v.find(TypeKind::Theme, "Social Group");
    require(report, actor && group && v.subsumes(*actor, *group), "Actor",
            [] { return std::string("Actor must contain Social Group"); });
    expect_members(report, v, "Social Group", {"Minority", "Indigenous People"});
    expect_members(report, v, kDiscourseType, {"Discourse Act", "Discourse Genre"});
    expect_members(report, v, "Discourse Genre", {"Summary", "Interview", "Chronology", "Portrait"});
    return report;
}

ValidationReport verify_templates(const std::vector<Template>& templates, const Vocabulary& v) {
    ValidationReport report;
    const auto discourse_type = v.find(TypeKind::Theme, labels::kDiscourseType);
    const auto topic = v.find(TypeKind::Nesting, labels::kDiscourseTopic);
    std::set<std::string> groups;
    for (const auto& t : templates) {
        const ValidationReport graph_report = check_well_formed(t.graph, v);
        for (const auto& f : graph_report.findings()) {
            if (f.severity == Severity::Error) {
                report.add(f.severity, f.code, t.id + ":" + f.subject, f.message);
            }
        }
        bool has_topic_host = false;
        for (const auto& node : t.graph.nodes()) {
            if (!discourse_type || !topic || !v.contains(node.type) ||
                !v.subsumes(*discourse_type, node.type)) {
                continue;
            }
            for (const auto& n : node.nestings) {
                if (v.contains(n.type) && v.subsumes(*topic, n.type)) has_topic_host = true;
            }
        }
        require(report, has_topic_host, t.id, [] {
            return std::string("template has no Discourse Type node with a topic nesting");
        });
        require(report, groups.insert(t.group).second, t.id,
                [&] { return "group " + t.group + " is used by another template"; });
        require(report, is_known_group(t.group), t.id,
                [&] { return "unknown template group " + t.group; });
    }
    require(report, groups.size() == template_groups().size(), "templates", [&] {
        return "templates cover " + std::to_string(groups.size()) + " groups, expected " +
               std::to_string(template_groups().size());
    });
    return report;
}

BundledData load_bundled(const std::filesystem::path& dir) {
    verify_manifest(dir);
    BundledData data;
    data.vocabulary = parse_vocabulary(text::read_file(dir / "pci.vocab"));
    ValidationReport structure = verify_structure(data.vocabulary);
    data.templates = parse_templates(text::read_file(dir / "templates.pci"));
    structure.append(verify_templates(data.templates, data.vocabulary));
    if (structure.has_errors()) {
        throw ValidationFailure(ErrorCode::StructureDrift, "bundled data drifted from its expected shape",
                                std::move(structure));
    }

    std::vector<std::filesystem::path> cv_files;
    for (const auto& entry : read_manifest(dir)) {
        if (entry.path.rfind("cv/", 0) == 0) cv_files.push_back(dir / entry.path);
    }
    std::sort(cv_files.begin(), cv_files.end());
    for (const auto& path : cv_files) {
        data.controlled.add(parse_controlled_vocabulary(text::read_file(path)));
    }
    return data;
}

} // namespace pci
