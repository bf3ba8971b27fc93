#include "pci/vocabulary.hpp"

#include "pci/text.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace pci {

std::string to_string(const TypeRef& ref) {
    if (const auto* id = std::get_if<TypeId>(&ref)) {
        return id->str();
    }
    return text::quote(std::get<std::string>(ref));
}

namespace {

// ---------------------------------------------------------------------------
// Parsing

TypeRef parse_ref(const std::string& item, int line, int column) {
    if (!item.empty() && item.front() == '"') {
        auto label = text::unquote(item, line, column);
        if (label.empty()) {
            throw Error(ErrorCode::Syntax, "empty label reference", line, column);
        }
        return label;
    }
    auto id = TypeId::parse(item);
    if (!id) {
        throw Error(ErrorCode::Syntax, "expected a type id or quoted label, got '" + item + "'",
                    line, column);
    }
    return *id;
}

std::vector<TypeRef> parse_ref_list(std::string_view value, int line, int column) {
    std::vector<TypeRef> refs;
    for (const auto& item : text::split_list(value)) {
        if (item.empty()) {
            throw Error(ErrorCode::Syntax, "empty list item", line, column);
        }
        refs.push_back(parse_ref(item, line, column));
    }
    return refs;
}

std::optional<TypeKind> declaration_kind(std::string_view keyword) {
    if (keyword == "concept") return TypeKind::Theme;
    if (keyword == "relation") return TypeKind::Relation;
    if (keyword == "nesting") return TypeKind::Nesting;
    return std::nullopt;
}

TypeDecl parse_declaration(TypeKind kind, const std::vector<text::Token>& tokens, int line) {
    TypeDecl decl;
    decl.kind = kind;
    decl.line = line;
    std::size_t i = 1;
    if (i < tokens.size() && !tokens[i].text.empty() && tokens[i].text.front() != '"') {
        auto id = TypeId::parse(tokens[i].text);
        if (!id) {
            throw Error(ErrorCode::Syntax, "malformed type id '" + tokens[i].text + "'", line,
                        tokens[i].column);
        }
        if (id->kind() != kind) {
            throw Error(ErrorCode::Syntax,
                        "id " + id->str() + " does not match " + std::string(to_string(kind)),
                        line, tokens[i].column);
        }
        if (id->is_root()) {
            throw Error(ErrorCode::Syntax, id->str() + " is reserved for the root", line,
                        tokens[i].column);
        }
        decl.id = id;
        ++i;
    }
    if (i >= tokens.size()) {
        throw Error(ErrorCode::Syntax, "missing label", line, 0);
    }
    decl.label = text::unquote(tokens[i].text, line, tokens[i].column);
    if (decl.label.empty()) {
        throw Error(ErrorCode::Syntax, "empty label", line, tokens[i].column);
    }
    ++i;

    std::set<std::string> seen;
    bool has_arity = false;
    for (; i < tokens.size(); ++i) {
        const auto& token = tokens[i];
        const auto eq = token.text.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error(ErrorCode::Syntax, "expected key=value, got '" + token.text + "'", line,
                        token.column);
        }
        const std::string key = token.text.substr(0, eq);
        const std::string value = token.text.substr(eq + 1);
        const int value_column = token.column + static_cast<int>(eq) + 1;
        if (!seen.insert(key).second) {
            throw Error(ErrorCode::Syntax, "repeated field '" + key + "'", line, token.column);
        }
        if (value.empty()) {
            throw Error(ErrorCode::Syntax, "empty value for '" + key + "'", line, value_column);
        }
        if (key == "parent") {
            decl.parents = parse_ref_list(value, line, value_column);
        } else if (key == "arity" && kind == TypeKind::Relation) {
            int arity = 0;
            for (char c : value) {
                if (c < '0' || c > '9' || arity > 1000) {
                    throw Error(ErrorCode::Syntax, "arity must be a positive integer", line,
                                value_column);
                }
                arity = arity * 10 + (c - '0');
            }
            decl.arity = arity;
            has_arity = true;
        } else if (key == "signature" && kind == TypeKind::Relation) {
            decl.signature = parse_ref_list(value, line, value_column);
        } else if (key == "note" && kind == TypeKind::Theme) {
            decl.note = text::unquote(value, line, value_column);
        } else {
            throw Error(ErrorCode::Syntax,
                        "unexpected field '" + key + "' for " + std::string(to_string(kind)),
                        line, token.column);
        }
    }
    if (kind == TypeKind::Relation && !has_arity) {
        throw Error(ErrorCode::Syntax, "relation declaration requires arity=", line, 0);
    }
    return decl;
}

// ---------------------------------------------------------------------------
// Resolution shared by validation and build

std::string subject_of(const TypeDecl& decl) {
    return decl.id ? decl.id->str() : text::quote(decl.label);
}

bool canonical_less(const TypeDecl& a, const TypeDecl& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.id.has_value() != b.id.has_value()) return a.id.has_value();
    if (a.id) return *a.id < *b.id;
    return a.label < b.label;
}

/// Declarations of one kind, positioned: 0 is the root, then the draft's
/// declarations of that kind in canonical order.
struct KindTable {
    explicit KindTable(TypeKind k) : kind(k) {}

    TypeKind kind;
    std::vector<const TypeDecl*> decls; // decls[0] == nullptr (root)
    std::map<std::uint32_t, std::size_t> by_number;
    std::unordered_map<std::string, std::size_t> by_label;

    std::optional<std::size_t> resolve(const TypeRef& ref) const {
        if (const auto* id = std::get_if<TypeId>(&ref)) {
            if (id->kind() != kind) return std::nullopt;
            if (id->is_root()) return 0;
            auto it = by_number.find(id->number());
            if (it == by_number.end()) return std::nullopt;
            return it->second;
        }
        auto it = by_label.find(std::get<std::string>(ref));
        if (it == by_label.end()) return std::nullopt;
        return it->second;
    }
};

struct Resolution {
    std::array<KindTable, 3> tables{KindTable(TypeKind::Theme), KindTable(TypeKind::Relation),
                                    KindTable(TypeKind::Nesting)};
    // Resolved parents per position; unresolved references dropped.
    std::array<std::vector<std::vector<std::size_t>>, 3> parents;
    std::array<bool, 3> acyclic{true, true, true};
};

std::size_t kind_index(TypeKind kind) { return static_cast<std::size_t>(kind); }

Resolution resolve(const VocabularyDraft& draft, ValidationReport& report) {
    Resolution res;
    std::vector<const TypeDecl*> sorted;
    for (const auto& decl : draft.types) sorted.push_back(&decl);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const TypeDecl* a, const TypeDecl* b) { return canonical_less(*a, *b); });

    for (auto& table : res.tables) {
        table.decls.push_back(nullptr);
        if (!draft.root_label.empty()) {
            table.by_label.emplace(draft.root_label, 0);
        }
    }
    if (draft.root_label.empty()) {
        report.add(Severity::Error, ErrorCode::MissingRoot, "root", "vocabulary has no root");
    }

    for (const TypeDecl* decl : sorted) {
        auto& table = res.tables[kind_index(decl->kind)];
        if (decl->id && decl->id->kind() != decl->kind) {
            report.add(Severity::Error, ErrorCode::KindMismatch, subject_of(*decl),
                       "id kind does not match " + std::string(to_string(decl->kind)),
                       decl->line);
            continue;
        }
        if (decl->id && decl->id->is_root()) {
            report.add(Severity::Error, ErrorCode::DuplicateId, subject_of(*decl),
                       "the root id cannot be declared", decl->line);
            continue;
        }
        if (decl->id && table.by_number.count(decl->id->number()) != 0) {
            report.add(Severity::Error, ErrorCode::DuplicateId, subject_of(*decl),
                       "duplicate id", decl->line);
            continue;
        }
        if (table.by_label.count(decl->label) != 0) {
            report.add(Severity::Error, ErrorCode::DuplicateLabel, subject_of(*decl),
                       "duplicate " + std::string(to_string(decl->kind)) + " label " +
                           text::quote(decl->label),
                       decl->line);
            continue;
        }
        const std::size_t position = table.decls.size();
        table.decls.push_back(decl);
        if (decl->id) table.by_number.emplace(decl->id->number(), position);
        table.by_label.emplace(decl->label, position);
    }

    for (std::size_t k = 0; k < 3; ++k) {
        auto& table = res.tables[k];
        auto& parents = res.parents[k];
        parents.assign(table.decls.size(), {});
        for (std::size_t p = 1; p < table.decls.size(); ++p) {
            const TypeDecl& decl = *table.decls[p];
            if (decl.parents.empty()) {
                parents[p].push_back(0);
                continue;
            }
            for (const auto& ref : decl.parents) {
                auto target = table.resolve(ref);
                if (!target) {
                    report.add(Severity::Error, ErrorCode::UnknownReference, subject_of(decl),
                               "unknown parent " + to_string(ref), decl.line);
                    continue;
                }
                if (std::find(parents[p].begin(), parents[p].end(), *target) ==
                    parents[p].end()) {
                    parents[p].push_back(*target);
                }
            }
        }

        // Tarjan's strongly connected components over parent links.
        const std::size_t n = table.decls.size();
        std::vector<int> order(n, -1), low(n, 0);
        std::vector<bool> on_stack(n, false);
        std::vector<std::size_t> stack;
        int counter = 0;
        std::function<void(std::size_t)> visit = [&](std::size_t v) {
            order[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            for (std::size_t w : parents[v]) {
                if (order[w] < 0) {
                    visit(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], order[w]);
                }
            }
            if (low[v] == order[v]) {
                std::vector<std::size_t> component;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != v);
                const bool self_loop =
                    std::find(parents[v].begin(), parents[v].end(), v) != parents[v].end();
                if (component.size() > 1 || self_loop) {
                    res.acyclic[k] = false;
                    std::sort(component.begin(), component.end());
                    std::string members;
                    for (std::size_t c : component) {
                        if (!members.empty()) members += ", ";
                        members += c == 0 ? draft.root_label : subject_of(*table.decls[c]);
                    }
                    // The root has no parents, so it never sits on a cycle.
                    const TypeDecl* first = table.decls[component.front()];
                    report.add(Severity::Error, ErrorCode::Cycle, subject_of(*first),
                               "parent cycle through " + members, first->line);
                }
            }
        };
        for (std::size_t v = 0; v < n; ++v) {
            if (order[v] < 0) visit(v);
        }
    }
    return res;
}

/// Ancestor sets over an acyclic parent relation (each set includes the type).
std::vector<boost::dynamic_bitset<>> closure(const std::vector<std::vector<std::size_t>>& parents) {
    const std::size_t n = parents.size();
    std::vector<boost::dynamic_bitset<>> anc(n);
    std::vector<bool> done(n, false);
    std::function<void(std::size_t)> fill = [&](std::size_t v) {
        if (done[v]) return;
        anc[v].resize(n);
        anc[v].set(v);
        for (std::size_t p : parents[v]) {
            fill(p);
            anc[v] |= anc[p];
        }
        done[v] = true;
    };
    for (std::size_t v = 0; v < n; ++v) fill(v);
    return anc;
}

void check_relations(const Resolution& res, const VocabularyOptions& options,
                     ValidationReport& report) {
    const auto& concepts = res.tables[kind_index(TypeKind::Theme)];
    const auto& relations = res.tables[kind_index(TypeKind::Relation)];
    const auto& relation_parents = res.parents[kind_index(TypeKind::Relation)];

    std::vector<boost::dynamic_bitset<>> concept_anc;
    if (res.acyclic[kind_index(TypeKind::Theme)]) {
        concept_anc = closure(res.parents[kind_index(TypeKind::Theme)]);
    }

    // Resolved signature slots per relation position (nullopt: unresolved).
    std::vector<std::optional<std::vector<std::optional<std::size_t>>>> slots(
        relations.decls.size());
    for (std::size_t p = 1; p < relations.decls.size(); ++p) {
        const TypeDecl& decl = *relations.decls[p];
        if (decl.arity < 1) {
            report.add(Severity::Error, ErrorCode::ArityMismatch, subject_of(decl),
                       "arity must be at least 1", decl.line);
        }
        if (!decl.signature) continue;
        if (static_cast<int>(decl.signature->size()) != decl.arity) {
            report.add(Severity::Error, ErrorCode::SignatureMismatch, subject_of(decl),
                       "signature has " + std::to_string(decl.signature->size()) +
                           " slots but arity is " + std::to_string(decl.arity),
                       decl.line);
        }
        std::vector<std::optional<std::size_t>> resolved;
        for (const auto& ref : *decl.signature) {
            auto slot = concepts.resolve(ref);
            if (!slot) {
                report.add(Severity::Error, ErrorCode::UnknownReference, subject_of(decl),
                           "signature names unknown theme " + to_string(ref), decl.line);
            }
            resolved.push_back(slot);
        }
        slots[p] = std::move(resolved);
    }

    for (std::size_t p = 1; p < relations.decls.size(); ++p) {
        const TypeDecl& decl = *relations.decls[p];
        for (std::size_t parent : relation_parents[p]) {
            if (parent == 0) continue;
            const TypeDecl& pdecl = *relations.decls[parent];
            if (pdecl.arity != decl.arity) {
                report.add(Severity::Error, ErrorCode::ArityMismatch, subject_of(decl),
                           "arity " + std::to_string(decl.arity) + " differs from parent " +
                               subject_of(pdecl) + " arity " + std::to_string(pdecl.arity),
                           decl.line);
                continue;
            }
            if (!options.signature_covariance || concept_anc.empty() || !slots[p] ||
                !slots[parent]) {
                continue;
            }
            const auto& own = *slots[p];
            const auto& inherited = *slots[parent];
            for (std::size_t i = 0; i < std::min(own.size(), inherited.size()); ++i) {
                if (!own[i] || !inherited[i]) continue;
                if (!concept_anc[*own[i]].test(*inherited[i])) {
                    report.add(Severity::Error, ErrorCode::SignatureMismatch, subject_of(decl),
                               "slot " + std::to_string(i + 1) + " " +
                                   to_string((*decl.signature)[i]) +
                                   " does not specialize parent slot " +
                                   to_string((*pdecl.signature)[i]),
                               decl.line);
                }
            }
        }
    }
}

void append_refs(std::string& out, std::string_view key, const std::vector<TypeRef>& refs) {
    out += ' ';
    out += key;
    out += '=';
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (i > 0) out += ',';
        out += to_string(refs[i]);
    }
}

} // namespace

VocabularyDraft parse_vocabulary_document(std::string_view input) {
    VocabularyDraft draft;
    text::LineCursor cursor(input);
    bool have_root = false;
    while (!cursor.done()) {
        const auto& line = cursor.next();
        auto tokens = text::tokenize(line.content, line.number);
        const auto& head = tokens.front();
        if (head.text == "root") {
            if (have_root) {
                throw Error(ErrorCode::Syntax, "root declared more than once", line.number,
                            head.column);
            }
            if (tokens.size() != 2) {
                throw Error(ErrorCode::Syntax, "expected: root \"<label>\"", line.number,
                            head.column);
            }
            draft.root_label = text::unquote(tokens[1].text, line.number, tokens[1].column);
            if (draft.root_label.empty()) {
                throw Error(ErrorCode::Syntax, "empty root label", line.number, tokens[1].column);
            }
            have_root = true;
            continue;
        }
        auto kind = declaration_kind(head.text);
        if (!kind) {
            throw Error(ErrorCode::Syntax, "unknown declaration '" + head.text + "'", line.number,
                        head.column);
        }
        if (!have_root) {
            throw Error(ErrorCode::MissingRoot, "the first declaration must be root",
                        line.number, head.column);
        }
        draft.types.push_back(parse_declaration(*kind, tokens, line.number));
    }
    if (!have_root) {
        throw Error(ErrorCode::MissingRoot, "vocabulary has no root declaration");
    }
    return draft;
}

ValidationReport validate_vocabulary(const VocabularyDraft& draft,
                                     const VocabularyOptions& options) {
    ValidationReport report;
    auto res = resolve(draft, report);
    check_relations(res, options, report);
    return report;
}

std::string serialize_vocabulary(const VocabularyDraft& draft) {
    std::vector<const TypeDecl*> sorted;
    for (const auto& decl : draft.types) sorted.push_back(&decl);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const TypeDecl* a, const TypeDecl* b) { return canonical_less(*a, *b); });

    std::string out = "root " + text::quote(draft.root_label) + "\n";
    for (const TypeDecl* decl : sorted) {
        out += to_string(decl->kind);
        if (decl->id) {
            out += ' ';
            out += decl->id->str();
        }
        out += ' ';
        out += text::quote(decl->label);
        if (decl->kind == TypeKind::Relation) {
            out += " arity=";
            out += std::to_string(decl->arity);
            if (decl->signature) append_refs(out, "signature", *decl->signature);
        }
        if (!decl->parents.empty()) append_refs(out, "parent", decl->parents);
        if (decl->kind == TypeKind::Theme && decl->note) {
            out += " note=";
            out += text::quote(*decl->note);
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary Vocabulary::build(const VocabularyDraft& draft, const VocabularyOptions& options) {
    ValidationReport report;
    auto res = resolve(draft, report);
    check_relations(res, options, report);
    for (const auto& f : report.findings()) {
        if (f.severity == Severity::Error) {
            throw Error(f.code, f.subject + ": " + f.message, f.line);
        }
    }

    Vocabulary v;
    v.root_label_ = draft.root_label;
    const auto& concepts = res.tables[kind_index(TypeKind::Theme)];
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& table = res.tables[k];
        auto& types = v.types_[k];
        types.resize(table.decls.size());
        types[0].kind = table.kind;
        types[0].id = TypeId::root(table.kind);
        types[0].label = draft.root_label;
        for (std::size_t p = 1; p < table.decls.size(); ++p) {
            const TypeDecl& decl = *table.decls[p];
            TypeInfo& info = types[p];
            info.kind = decl.kind;
            info.id = decl.id;
            info.label = decl.label;
            info.parents = res.parents[k][p];
            std::sort(info.parents.begin(), info.parents.end());
            info.arity = decl.arity;
            info.note = decl.note;
            if (decl.signature) {
                std::vector<std::size_t> slots;
                for (const auto& ref : *decl.signature) slots.push_back(*concepts.resolve(ref));
                info.signature = std::move(slots);
            }
        }
        for (std::size_t p = 1; p < types.size(); ++p) {
            for (std::size_t parent : types[p].parents) types[parent].children.push_back(p);
        }
        for (auto& info : types) {
            std::sort(info.children.begin(), info.children.end(),
                      [&](std::size_t a, std::size_t b) { return types[a].label < types[b].label; });
        }
        v.ancestors_[k] = closure(res.parents[k]);
    }
    return v;
}

const TypeInfo& Vocabulary::info(TypeKind kind, std::size_t position) const {
    return types_[index(kind)].at(position);
}

std::optional<std::size_t> Vocabulary::position(TypeId id) const {
    const auto& types = types_[index(id.kind())];
    if (id.is_root()) return 0;
    // Positions hold numbered types in ascending id order right after the root.
    std::size_t lo = 1, hi = types.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto& mid_id = types[mid].id;
        if (!mid_id || id < *mid_id) {
            hi = mid;
        } else if (*mid_id < id) {
            lo = mid + 1;
        } else {
            return mid;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> Vocabulary::position(TypeKind kind, std::string_view label) const {
    const auto& types = types_[index(kind)];
    for (std::size_t p = 0; p < types.size(); ++p) {
        if (types[p].label == label) return p;
    }
    return std::nullopt;
}

std::size_t Vocabulary::require(TypeId id) const {
    auto p = position(id);
    if (!p) {
        throw Error(ErrorCode::UnknownType, "unknown type " + id.str());
    }
    return *p;
}

const TypeInfo& Vocabulary::info(TypeId id) const {
    return types_[index(id.kind())][require(id)];
}

std::optional<TypeId> Vocabulary::find(TypeKind kind, std::string_view label) const {
    auto p = position(kind, label);
    if (!p) return std::nullopt;
    return types_[index(kind)][*p].id;
}

std::vector<TypeId> Vocabulary::children(TypeId id) const {
    std::vector<TypeId> out;
    const auto& types = types_[index(id.kind())];
    for (std::size_t c : types[require(id)].children) {
        if (types[c].id) out.push_back(*types[c].id);
    }
    return out;
}

bool Vocabulary::subsumes(TypeId general, TypeId specific) const {
    if (general.kind() != specific.kind()) {
        throw Error(ErrorCode::KindMismatch,
                    "cannot compare " + general.str() + " with " + specific.str());
    }
    const auto g = require(general);
    const auto s = require(specific);
    return ancestors_[index(general.kind())][s].test(g);
}

bool Vocabulary::subsumes(TypeKind kind, std::size_t general, std::size_t specific) const {
    return ancestors_[index(kind)].at(specific).test(general);
}

const boost::dynamic_bitset<>& Vocabulary::ancestors(TypeKind kind, std::size_t position) const {
    return ancestors_[index(kind)].at(position);
}

std::vector<std::size_t> Vocabulary::least_common_subsumers(TypeKind kind, std::size_t a,
                                                            std::size_t b) const {
    const auto& anc = ancestors_[index(kind)];
    const auto common = anc.at(a) & anc.at(b);
    std::vector<std::size_t> out;
    for (auto c = common.find_first(); c != boost::dynamic_bitset<>::npos;
         c = common.find_next(c)) {
        bool minimal = true;
        for (auto d = common.find_first(); d != boost::dynamic_bitset<>::npos;
             d = common.find_next(d)) {
            if (d != c && anc[d].test(c)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(c);
    }
    return out;
}

std::vector<TypeId> Vocabulary::least_common_subsumers(TypeId a, TypeId b) const {
    if (a.kind() != b.kind()) {
        throw Error(ErrorCode::KindMismatch, "cannot compare " + a.str() + " with " + b.str());
    }
    const auto& types = types_[index(a.kind())];
    std::vector<TypeId> out;
    for (std::size_t p : least_common_subsumers(a.kind(), require(a), require(b))) {
        if (!types[p].id) {
            throw Error(ErrorCode::UnknownType,
                        "common subsumer " + text::quote(types[p].label) + " has no identifier");
        }
        out.push_back(*types[p].id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

VocabularyDraft Vocabulary::to_draft() const {
    VocabularyDraft draft;
    draft.root_label = root_label_;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& types = types_[k];
        const auto& concepts = types_[index(TypeKind::Theme)];
        auto ref_to = [](const TypeInfo& target) -> TypeRef {
            if (target.id) return *target.id;
            return target.label;
        };
        for (std::size_t p = 1; p < types.size(); ++p) {
            const TypeInfo& info = types[p];
            TypeDecl decl;
            decl.kind = info.kind;
            decl.id = info.id;
            decl.label = info.label;
            decl.arity = info.arity;
            decl.note = info.note;
            if (!(info.parents.size() == 1 && info.parents.front() == 0)) {
                for (std::size_t parent : info.parents) decl.parents.push_back(ref_to(types[parent]));
            }
            if (info.signature) {
                std::vector<TypeRef> slots;
                for (std::size_t s : *info.signature) slots.push_back(ref_to(concepts[s]));
                decl.signature = std::move(slots);
            }
            draft.types.push_back(std::move(decl));
        }
    }
    return draft;
}

Vocabulary parse_vocabulary(std::string_view text, const VocabularyOptions& options) {
    return Vocabulary::build(parse_vocabulary_document(text), options);
}

ValidationReport validate_vocabulary(const Vocabulary& v, const VocabularyOptions& options) {
    return validate_vocabulary(v.to_draft(), options);
}

std::string serialize_vocabulary(const Vocabulary& v) { return serialize_vocabulary(v.to_draft()); }

} // namespace pci
