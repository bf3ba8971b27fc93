#include "pci/annotation.hpp"

#include <set>

namespace pci {

const std::vector<TemplateGroupInfo>& template_groups() {
    static const std::vector<TemplateGroupInfo> groups = {
        {"essentials", "Essentials of the culture and life world of a social group"},
        {"intangible-heritage", "Intangible heritage of a social group"},
        {"practical-knowledge", "Practical knowledge and traditional know-how of a social group"},
        {"cultural-identity", "Cultural identity of a social group"},
    };
    return groups;
}

bool is_known_group(std::string_view slug) {
    for (const auto& g : template_groups()) {
        if (g.slug == slug) return true;
    }
    return false;
}

void check_template(const Template& t) {
    for (const auto& [name, path] : t.slots) {
        const ConceptNode* node = find_node(t.graph, path);
        if (!node) {
            throw Error(ErrorCode::UnknownSlot, "slot " + name + " of template " + t.id +
                                                    " addresses no node (" + path.str() + ")");
        }
        if (!node->referent.is_generic()) {
            throw Error(ErrorCode::UnknownSlot, "slot " + name + " of template " + t.id +
                                                    " addresses an individual node");
        }
    }
}

ConceptualGraph instantiate_template(const Template& t, const std::map<std::string, Filler>& fillers,
                                     const ControlledVocabularySet* controlled) {
    ConceptualGraph g = t.graph;
    for (const auto& [slot, filler] : fillers) {
        auto it = t.slots.find(slot);
        if (it == t.slots.end()) {
            throw Error(ErrorCode::UnknownSlot, "template " + t.id + " has no slot '" + slot + "'");
        }
        if (text::trim(filler.keyword).empty()) {
            throw Error(ErrorCode::InvalidReferent, "empty filler for slot " + slot);
        }
        if (filler.language && !text::is_language_tag(*filler.language)) {
            throw Error(ErrorCode::Syntax, "malformed language tag '" + *filler.language + "'");
        }
        if (filler.vocabulary && controlled &&
            !controlled->contains(*filler.vocabulary, filler.keyword, filler.language)) {
            throw Error(ErrorCode::ControlledTermMiss,
                        text::quote(filler.keyword) + " is not in " + *filler.vocabulary);
        }
        ConceptNode* node = find_node(g, it->second);
        if (!node) {
            throw Error(ErrorCode::UnknownSlot, "slot " + slot + " addresses no node");
        }
        node->referent = Referent::individual(filler.keyword, filler.language, filler.vocabulary);
    }
    return g;
}

std::pair<std::string, Filler> parse_filler(std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw Error(ErrorCode::Syntax, "expected slot=value[@lang][!vocabulary], got '" +
                                           std::string(spec) + "'");
    }
    std::string slot(spec.substr(0, eq));
    std::string_view value = spec.substr(eq + 1);
    Filler filler;
    if (auto bang = value.rfind('!'); bang != std::string_view::npos &&
                                      text::is_bare_name(value.substr(bang + 1))) {
        filler.vocabulary = std::string(value.substr(bang + 1));
        value = value.substr(0, bang);
    }
    if (auto at = value.rfind('@'); at != std::string_view::npos &&
                                    text::is_language_tag(value.substr(at + 1))) {
        filler.language = std::string(value.substr(at + 1));
        value = value.substr(0, at);
    }
    filler.keyword = text::nfc(value);
    if (text::trim(filler.keyword).empty()) {
        throw Error(ErrorCode::Syntax, "empty filler value for slot " + slot);
    }
    return {std::move(slot), std::move(filler)};
}

namespace {
constexpr std::string_view kTemplatesHeader = "pci-templates v1";
}

std::vector<Template> parse_templates(std::string_view input) {
    text::LineCursor cursor(input);
    if (cursor.done() || cursor.peek().content != kTemplatesHeader) {
        throw Error(ErrorCode::Syntax, "expected header '" + std::string(kTemplatesHeader) + "'",
                    cursor.done() ? 1 : cursor.peek().number, 1);
    }
    cursor.next();
    std::vector<Template> out;
    std::set<std::string> ids;
    while (!cursor.done()) {
        const text::Line& header = cursor.next();
        auto t = text::tokenize(header.content, header.number);
        if (t.size() != 4 || t[0].text != "template" || t[3].text.front() != '"' ||
            !text::is_bare_name(t[1].text) || !text::is_bare_name(t[2].text)) {
            throw Error(ErrorCode::Syntax, "expected: template <id> <group> \"<name>\"",
                        header.number, 1);
        }
        Template tpl;
        tpl.id = t[1].text;
        tpl.group = t[2].text;
        tpl.name = text::unquote(t[3].text, header.number, t[3].column);
        if (!ids.insert(tpl.id).second) {
            throw Error(ErrorCode::DuplicateId, "duplicate template " + tpl.id, header.number, 1);
        }
        while (!cursor.done() && cursor.peek().content.rfind("slot ", 0) == 0) {
            const text::Line& line = cursor.next();
            auto s = text::tokenize(line.content, line.number);
            auto path = s.size() == 3 ? NodePath::parse(s[2].text) : std::nullopt;
            if (!path || !text::is_bare_name(s[1].text)) {
                throw Error(ErrorCode::Syntax, "expected: slot <name> <node-path>", line.number, 1);
            }
            if (!tpl.slots.emplace(s[1].text, *path).second) {
                throw Error(ErrorCode::DuplicateId, "duplicate slot " + s[1].text, line.number, 1);
            }
        }
        tpl.graph = read_graph(cursor, "endgraph");
        try {
            check_template(tpl);
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), header.number, 1);
        }
        out.push_back(std::move(tpl));
    }
    return out;
}

std::string serialize_templates(const std::vector<Template>& templates) {
    std::string out(kTemplatesHeader);
    out += '\n';
    for (const auto& t : templates) {
        out += "\ntemplate " + t.id + " " + t.group + " " + text::quote(t.name) + "\n";
        for (const auto& [name, path] : t.slots) out += "slot " + name + " " + path.str() + "\n";
        out += serialize_graph(t.graph, 2);
        out += "  endgraph\n";
    }
    return out;
}

} // namespace pci
