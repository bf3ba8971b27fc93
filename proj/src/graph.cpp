#include "pci/graph.hpp"

#include "pci/vocabulary.hpp"

#include <algorithm>
#include <charconv>

namespace pci {

std::string_view to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Topical: return "topical";
        case GraphKind::Narrative: return "narrative";
        case GraphKind::Pragmatic: return "pragmatic";
        case GraphKind::Unspecified: return "unspecified";
    }
    return "unspecified";
}

std::optional<GraphKind> parse_graph_kind(std::string_view text) {
    if (text == "topical") return GraphKind::Topical;
    if (text == "narrative") return GraphKind::Narrative;
    if (text == "pragmatic") return GraphKind::Pragmatic;
    if (text == "unspecified") return GraphKind::Unspecified;
    return std::nullopt;
}

Referent Referent::individual(std::string_view keyword, std::optional<std::string> language,
                              std::optional<std::string> vocabulary) {
    Referent r;
    r.kind = Kind::Individual;
    r.keyword = text::nfc(keyword);
    r.language = std::move(language);
    r.vocabulary = std::move(vocabulary);
    return r;
}

ConceptualGraph::ConceptualGraph(GraphKind kind) : kind_(kind) {}

NodeId ConceptualGraph::add_concept(TypeId type, Referent referent) {
    const NodeId id{nodes_.empty() ? 1u : nodes_.back().id.value + 1};
    nodes_.push_back(ConceptNode{id, type, std::move(referent), {}});
    return id;
}

void ConceptualGraph::insert_concept(ConceptNode node) {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node.id,
                               [](const ConceptNode& n, NodeId id) { return n.id < id; });
    if (it != nodes_.end() && it->id == node.id) {
        throw Error(ErrorCode::DuplicateNode, "duplicate node id " + std::to_string(node.id.value));
    }
    nodes_.insert(it, std::move(node));
}

std::size_t ConceptualGraph::add_relation(TypeId type, std::vector<NodeId> args) {
    if (args.empty()) {
        throw Error(ErrorCode::ArityMismatch, "relation " + type.str() + " needs an argument");
    }
    for (NodeId arg : args) {
        if (!find(arg)) {
            throw Error(ErrorCode::UnknownNode,
                        "relation " + type.str() + " refers to unknown node " +
                            std::to_string(arg.value));
        }
    }
    edges_.push_back(RelationEdge{type, std::move(args)});
    return edges_.size() - 1;
}

std::size_t ConceptualGraph::add_relation(TypeId type, std::vector<NodeId> args,
                                          const Vocabulary& v) {
    if (type.kind() != TypeKind::Relation) {
        throw Error(ErrorCode::KindMismatch, type.str() + " is not a relation type");
    }
    const TypeInfo& info = v.info(type);
    if (!type.is_root() && static_cast<int>(args.size()) != info.arity) {
        throw Error(ErrorCode::ArityMismatch, type.str() + " expects " +
                                                  std::to_string(info.arity) + " arguments, got " +
                                                  std::to_string(args.size()));
    }
    return add_relation(type, std::move(args));
}

void ConceptualGraph::attach_nesting(NodeId node, TypeId nesting_type, ConceptualGraph inner) {
    ConceptNode* host = find(node);
    if (!host) {
        throw Error(ErrorCode::UnknownNode, "cannot nest into unknown node " +
                                                std::to_string(node.value));
    }
    auto it = std::lower_bound(host->nestings.begin(), host->nestings.end(), nesting_type,
                               [](const Nesting& n, TypeId t) { return n.type < t; });
    if (it != host->nestings.end() && it->type == nesting_type) {
        throw Error(ErrorCode::DuplicateNesting, "node " + std::to_string(node.value) +
                                                     " already has a " + nesting_type.str() +
                                                     " nesting");
    }
    host->nestings.insert(it, Nesting{nesting_type, std::move(inner)});
}

std::optional<std::size_t> ConceptualGraph::index_of(NodeId id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const ConceptNode& n, NodeId key) { return n.id < key; });
    if (it == nodes_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

const ConceptNode* ConceptualGraph::find(NodeId id) const {
    auto i = index_of(id);
    return i ? &nodes_[*i] : nullptr;
}

ConceptNode* ConceptualGraph::find(NodeId id) {
    auto i = index_of(id);
    return i ? &nodes_[*i] : nullptr;
}

bool operator==(const ConceptualGraph& a, const ConceptualGraph& b) {
    return a.kind_ == b.kind_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
}

const Nesting* ConceptNode::nesting(TypeId type) const {
    for (const auto& n : nestings) {
        if (n.type == type) return &n;
    }
    return nullptr;
}

bool operator==(const ConceptNode& a, const ConceptNode& b) {
    return a.id == b.id && a.type == b.type && a.referent == b.referent &&
           a.nestings == b.nestings;
}

bool operator==(const Nesting& a, const Nesting& b) {
    return a.type == b.type && a.graph == b.graph;
}

namespace {

std::optional<NodeId> parse_node_id(std::string_view text) {
    if (text.empty() || (text.size() > 1 && text[0] == '0')) return std::nullopt;
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return NodeId{value};
}

} // namespace

std::optional<NodePath> NodePath::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto slash = text.find('/', start);
        parts.push_back(text.substr(start, slash == std::string_view::npos ? slash : slash - start));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    if (parts.size() % 2 == 0) return std::nullopt;
    NodePath path;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
        auto node = parse_node_id(parts[i]);
        auto nesting = TypeId::parse(parts[i + 1]);
        if (!node || !nesting || nesting->kind() != TypeKind::Nesting) return std::nullopt;
        path.nesting_steps.emplace_back(*node, *nesting);
    }
    auto last = parse_node_id(parts.back());
    if (!last) return std::nullopt;
    path.node = *last;
    return path;
}

std::string NodePath::str() const {
    std::string out;
    for (const auto& [node, nesting] : nesting_steps) {
        out += std::to_string(node.value);
        out += '/';
        out += nesting.str();
        out += '/';
    }
    out += std::to_string(node.value);
    return out;
}

const ConceptNode* find_node(const ConceptualGraph& g, const NodePath& path) {
    const ConceptualGraph* level = &g;
    for (const auto& [node, nesting] : path.nesting_steps) {
        const ConceptNode* host = level->find(node);
        if (!host) return nullptr;
        const Nesting* inner = host->nesting(nesting);
        if (!inner) return nullptr;
        level = &inner->graph;
    }
    return level->find(path.node);
}

ConceptNode* find_node(ConceptualGraph& g, const NodePath& path) {
    return const_cast<ConceptNode*>(find_node(static_cast<const ConceptualGraph&>(g), path));
}

std::size_t total_nodes(const ConceptualGraph& g) {
    std::size_t n = g.nodes().size();
    for (const auto& node : g.nodes()) {
        for (const auto& nesting : node.nestings) n += total_nodes(nesting.graph);
    }
    return n;
}

// ---------------------------------------------------------------------------
// Text format

std::string format_referent(const Referent& r) {
    if (r.is_generic()) return "*";
    std::string out = text::quote(r.keyword);
    if (r.language) {
        out += '@';
        out += *r.language;
    }
    if (r.vocabulary) {
        out += '!';
        out += *r.vocabulary;
    }
    return out;
}

namespace {

void write_graph(const ConceptualGraph& g, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    out += pad + "graph " + std::string(to_string(g.kind())) + "\n";
    for (const auto& node : g.nodes()) {
        out += pad + "node " + std::to_string(node.id.value) + " [" + node.type.str() + ": " +
               format_referent(node.referent) + "]\n";
    }
    for (const auto& edge : g.edges()) {
        out += pad + "rel (" + edge.type.str() + ": ";
        for (std::size_t i = 0; i < edge.args.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(edge.args[i].value);
        }
        out += ")\n";
    }
    for (const auto& node : g.nodes()) {
        for (const auto& nesting : node.nestings) {
            out += pad + "nest " + std::to_string(node.id.value) + " " + nesting.type.str() +
                   " {\n";
            write_graph(nesting.graph, indent + 2, out);
            out += pad + "}\n";
        }
    }
}

Referent parse_referent(std::string_view s, int line, int column) {
    if (s == "*") return Referent::generic();
    if (s.empty() || s.front() != '"') {
        throw Error(ErrorCode::Syntax, "referent must be * or a quoted keyword", line, column);
    }
    std::size_t close = 1;
    while (close < s.size() && s[close] != '"') {
        close += s[close] == '\\' ? 2 : 1;
    }
    if (close >= s.size()) {
        throw Error(ErrorCode::Syntax, "unterminated keyword", line, column);
    }
    Referent r;
    r.kind = Referent::Kind::Individual;
    r.keyword = text::unquote(s.substr(0, close + 1), line, column);
    auto rest = s.substr(close + 1);
    if (!rest.empty() && rest.front() == '@') {
        auto end = rest.find('!');
        auto lang = rest.substr(1, end == std::string_view::npos ? end : end - 1);
        if (!text::is_language_tag(lang)) {
            throw Error(ErrorCode::Syntax, "malformed language tag '" + std::string(lang) + "'",
                        line, column);
        }
        r.language = std::string(lang);
        rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
    }
    if (!rest.empty() && rest.front() == '!') {
        auto name = rest.substr(1);
        if (!text::is_bare_name(name)) {
            throw Error(ErrorCode::Syntax, "malformed controlled vocabulary name", line, column);
        }
        r.vocabulary = std::string(name);
        rest = {};
    }
    if (!rest.empty()) {
        throw Error(ErrorCode::Syntax, "unexpected text after keyword", line, column);
    }
    return r;
}

/// `node <nid> [<TypeId>: <referent>]`
ConceptNode parse_node_line(std::string_view content, int line) {
    auto after = content.substr(4);
    const auto first = after.find_first_not_of(' ');
    if (first == std::string_view::npos) {
        throw Error(ErrorCode::Syntax, "expected node id", line, 5);
    }
    after = after.substr(first);
    const auto space = after.find(' ');
    auto id = parse_node_id(after.substr(0, space));
    if (!id || space == std::string_view::npos) {
        throw Error(ErrorCode::Syntax, "expected: node <id> [<type>: <referent>]", line, 6);
    }
    const int bracket_column = static_cast<int>(content.size() - after.size() + space) + 2;
    const std::string owned = text::trim(after.substr(space));
    if (owned.size() < 2 || owned.front() != '[' || owned.back() != ']') {
        throw Error(ErrorCode::Syntax, "concept must be written [<type>: <referent>]", line,
                    bracket_column);
    }
    std::string_view inner(owned);
    inner = inner.substr(1, inner.size() - 2);
    const auto colon = inner.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::Syntax, "missing ':' in concept", line, bracket_column);
    }
    auto type = TypeId::parse(text::trim(inner.substr(0, colon)));
    if (!type || type->kind() != TypeKind::Theme) {
        throw Error(ErrorCode::Syntax, "expected a theme id (T-<n>)", line, bracket_column + 1);
    }
    ConceptNode node;
    node.id = *id;
    node.type = *type;
    node.referent = parse_referent(text::trim(inner.substr(colon + 1)), line,
                                   bracket_column + static_cast<int>(colon) + 2);
    return node;
}

/// `rel (<RelId>: <nid>,<nid>,...)`
RelationEdge parse_rel_line(std::string_view content, int line) {
    auto body = text::trim(content.substr(3));
    if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
        throw Error(ErrorCode::Syntax, "relation must be written (<type>: <args>)", line, 5);
    }
    std::string_view inner(body);
    inner = inner.substr(1, inner.size() - 2);
    const auto colon = inner.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::Syntax, "missing ':' in relation", line, 5);
    }
    auto type = TypeId::parse(text::trim(inner.substr(0, colon)));
    if (!type || type->kind() != TypeKind::Relation) {
        throw Error(ErrorCode::Syntax, "expected a relation id (R-<n>)", line, 6);
    }
    RelationEdge edge;
    edge.type = *type;
    for (const auto& item : text::split_list(text::trim(inner.substr(colon + 1)))) {
        auto id = parse_node_id(text::trim(item));
        if (!id) {
            throw Error(ErrorCode::Syntax, "malformed relation argument '" + item + "'", line, 6);
        }
        edge.args.push_back(*id);
    }
    return edge;
}

} // namespace

std::string serialize_graph(const ConceptualGraph& g, int indent) {
    std::string out;
    write_graph(g, indent, out);
    return out;
}

ConceptualGraph read_graph(text::LineCursor& cursor, std::string_view terminator) {
    if (cursor.done()) {
        throw Error(ErrorCode::Syntax, "expected graph header", cursor.last_line_number());
    }
    const auto& header = cursor.next();
    auto tokens = text::tokenize(header.content, header.number);
    if (tokens.size() != 2 || tokens[0].text != "graph") {
        throw Error(ErrorCode::Syntax, "expected: graph <kind>", header.number, 1);
    }
    auto kind = parse_graph_kind(tokens[1].text);
    if (!kind) {
        throw Error(ErrorCode::Syntax, "unknown graph kind '" + tokens[1].text + "'",
                    header.number, tokens[1].column);
    }
    ConceptualGraph g(*kind);

    struct Pending {
        RelationEdge edge;
        int line;
    };
    struct PendingNest {
        NodeId node;
        TypeId type;
        ConceptualGraph graph;
        int line;
    };
    std::vector<Pending> edges;
    std::vector<PendingNest> nests;

    while (true) {
        if (cursor.done()) {
            if (terminator.empty()) break;
            throw Error(ErrorCode::Syntax, "missing '" + std::string(terminator) + "'",
                        cursor.last_line_number());
        }
        const auto& line = cursor.next();
        const auto content = line.content;
        if (!terminator.empty() && content == terminator) break;
        if (content.rfind("node ", 0) == 0) {
            try {
                g.insert_concept(parse_node_line(content, line.number));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::DuplicateNode) throw;
                throw Error(ErrorCode::DuplicateNode, e.what(), line.number, 6);
            }
        } else if (content.rfind("rel ", 0) == 0) {
            edges.push_back(Pending{parse_rel_line(content, line.number), line.number});
        } else if (content.rfind("nest ", 0) == 0) {
            auto parts = text::tokenize(content, line.number);
            if (parts.size() != 4 || parts[3].text != "{") {
                throw Error(ErrorCode::Syntax, "expected: nest <node> <nesting-type> {",
                            line.number, 1);
            }
            auto node = parse_node_id(parts[1].text);
            auto type = TypeId::parse(parts[2].text);
            if (!node) {
                throw Error(ErrorCode::Syntax, "malformed node id", line.number, parts[1].column);
            }
            if (!type || type->kind() != TypeKind::Nesting) {
                throw Error(ErrorCode::Syntax, "expected a nesting id (C-<n>)", line.number,
                            parts[2].column);
            }
            auto inner = read_graph(cursor, "}");
            nests.push_back(PendingNest{*node, *type, std::move(inner), line.number});
        } else {
            throw Error(ErrorCode::Syntax, "unexpected line in graph body", line.number, 1);
        }
    }

    for (auto& p : edges) {
        try {
            g.add_relation(p.edge.type, std::move(p.edge.args));
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), p.line, 1);
        }
    }
    for (auto& p : nests) {
        try {
            g.attach_nesting(p.node, p.type, std::move(p.graph));
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), p.line, 1);
        }
    }
    return g;
}

ConceptualGraph parse_graph(std::string_view input) {
    text::LineCursor cursor(input);
    return read_graph(cursor, "");
}

} // namespace pci
