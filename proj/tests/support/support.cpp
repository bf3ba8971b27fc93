#include "support.hpp"

#include "pci/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace pci::testing {

int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

const std::vector<std::string> kWords = {"Alpha", "Béta", "Gamma", "Delta", "Ωmega",
                                          "Río",   "Kappa", "Lambda", "Sigma", "Zeta"};
const std::vector<std::string> kKeywords = {"walachians", "Walachians", "île", "alpha",
                                            "quote\"d", "back\\slash", "two words", "ñandú"};
const std::vector<std::string> kLanguages = {"en", "fr", "deu"};

std::vector<TypeRef> pick_parents(Rng& rng, TypeKind kind, int declared, double extra) {
    // Parents come from earlier declarations only, which keeps the graph acyclic.
    std::vector<TypeRef> parents;
    if (declared == 0 || chance(rng, 0.2)) return parents;
    std::set<int> chosen{uniform(rng, 1, declared)};
    if (declared > 1 && chance(rng, extra)) chosen.insert(uniform(rng, 1, declared));
    if (chance(rng, 0.1)) chosen.insert(0);
    for (int n : chosen) parents.emplace_back(TypeId(kind, static_cast<std::uint32_t>(n)));
    return parents;
}

} // namespace

VocabularyDraft random_draft(Rng& rng, const VocabShape& shape) {
    VocabularyDraft d;
    d.root_label = "Root " + std::to_string(uniform(rng, 0, 999));
    for (int i = 1; i <= shape.concepts; ++i) {
        TypeDecl t;
        t.kind = TypeKind::Theme;
        t.id = TypeId(TypeKind::Theme, static_cast<std::uint32_t>(i));
        t.label = pick(rng, kWords) + " " + std::to_string(i);
        t.parents = pick_parents(rng, TypeKind::Theme, i - 1, shape.extra_parent);
        d.types.push_back(std::move(t));
    }
    std::vector<int> arity(static_cast<std::size_t>(shape.relations) + 1, 0);
    for (int i = 1; i <= shape.relations; ++i) {
        TypeDecl r;
        r.kind = TypeKind::Relation;
        r.id = TypeId(TypeKind::Relation, static_cast<std::uint32_t>(i));
        r.label = "Links " + std::to_string(i);
        // Children share the arity of a single earlier parent of their arity class.
        if (i > 1 && chance(rng, 0.6)) {
            const int parent = uniform(rng, 1, i - 1);
            r.parents.emplace_back(TypeId(TypeKind::Relation, static_cast<std::uint32_t>(parent)));
            arity[static_cast<std::size_t>(i)] = arity[static_cast<std::size_t>(parent)];
        } else {
            arity[static_cast<std::size_t>(i)] = uniform(rng, 1, 3);
            if (shape.concepts > 0 && chance(rng, 0.3)) {
                std::vector<TypeRef> sig;
                for (int k = 0; k < arity[static_cast<std::size_t>(i)]; ++k) {
                    sig.emplace_back(TypeId(TypeKind::Theme,
                                            static_cast<std::uint32_t>(uniform(rng, 0, shape.concepts))));
                }
                r.signature = std::move(sig);
            }
        }
        r.arity = arity[static_cast<std::size_t>(i)];
        d.types.push_back(std::move(r));
    }
    for (int i = 1; i <= shape.nestings; ++i) {
        TypeDecl c;
        c.kind = TypeKind::Nesting;
        c.id = TypeId(TypeKind::Nesting, static_cast<std::uint32_t>(i));
        c.label = "Context " + std::to_string(i);
        c.parents = pick_parents(rng, TypeKind::Nesting, i - 1, shape.extra_parent);
        d.types.push_back(std::move(c));
    }
    return d;
}

Vocabulary random_vocabulary(Rng& rng, const VocabShape& shape) {
    return Vocabulary::build(random_draft(rng, shape));
}

std::string random_text(Rng& rng, int max_length) {
    static const std::vector<std::string> pieces = {"a", "b", "Z", " ", "\"", "\\", "é", "Ω",
                                                    "#", "=", ",", "@", "!", "ß", "9"};
    std::string out = pick(rng, kWords);
    const int n = uniform(rng, 0, max_length);
    for (int i = 0; i < n; ++i) out += pick(rng, pieces);
    return out + "x";
}

VocabularyDraft random_document(Rng& rng) {
    VocabularyDraft d;
    d.root_label = random_text(rng, 6);
    std::set<std::string> labels{d.root_label};
    const std::array<TypeKind, 3> kinds{TypeKind::Theme, TypeKind::Relation, TypeKind::Nesting};
    std::array<std::uint32_t, 3> next{1, 1, 1};
    const int n = uniform(rng, 0, 12);
    for (int i = 0; i < n; ++i) {
        TypeDecl t;
        t.kind = pick(rng, std::vector<TypeKind>(kinds.begin(), kinds.end()));
        const std::size_t k = static_cast<std::size_t>(t.kind);
        if (chance(rng, 0.7)) t.id = TypeId(t.kind, next[k]++);
        do {
            t.label = random_text(rng, 8);
        } while (!labels.insert(t.label).second);
        const int parents = uniform(rng, 0, 2);
        for (int p = 0; p < parents; ++p) {
            if (chance(rng, 0.5)) {
                t.parents.emplace_back(TypeId(t.kind, static_cast<std::uint32_t>(uniform(rng, 0, 9))));
            } else {
                t.parents.emplace_back(*std::next(labels.begin(), uniform(rng, 0, static_cast<int>(labels.size()) - 1)));
            }
        }
        if (t.kind == TypeKind::Relation) {
            t.arity = uniform(rng, 1, 4);
            if (chance(rng, 0.5)) {
                std::vector<TypeRef> sig;
                for (int s = 0; s < t.arity; ++s) {
                    sig.emplace_back(TypeId(TypeKind::Theme, static_cast<std::uint32_t>(uniform(rng, 0, 9))));
                }
                t.signature = std::move(sig);
            }
        }
        if (t.kind == TypeKind::Theme && chance(rng, 0.4)) t.note = random_text(rng, 12);
        d.types.push_back(std::move(t));
    }
    return d;
}

namespace {

std::vector<TypeId> ids_of(const Vocabulary& v, TypeKind kind, bool include_root) {
    std::vector<TypeId> out;
    for (const auto& info : v.types(kind)) {
        const TypeId id = info.id ? *info.id : TypeId::root(kind);
        if (include_root || !id.is_root()) out.push_back(id);
    }
    return out;
}

Referent random_referent(Rng& rng, double individual_chance) {
    if (!chance(rng, individual_chance)) return Referent::generic();
    std::optional<std::string> language;
    if (chance(rng, 0.6)) language = pick(rng, kLanguages);
    std::optional<std::string> source;
    if (chance(rng, 0.15)) source = "peoples";
    return Referent::individual(pick(rng, kKeywords), language, source);
}

ConceptualGraph random_level(Rng& rng, const Vocabulary& v, const GraphShape& shape, int depth,
                             GraphKind kind) {
    ConceptualGraph g(kind);
    const auto themes = ids_of(v, TypeKind::Theme, shape.allow_root_types);
    const auto relations = ids_of(v, TypeKind::Relation, false);
    const auto nestings = ids_of(v, TypeKind::Nesting, false);
    if (themes.empty()) return g;

    const int nodes = uniform(rng, 0, shape.max_nodes);
    std::vector<NodeId> ids;
    for (int i = 0; i < nodes; ++i) {
        ConceptNode node;
        // Sparse ids exercise id lookups that are not positions.
        node.id = NodeId{static_cast<std::uint32_t>(ids.empty() ? uniform(rng, 1, 3)
                                                                : ids.back().value + uniform(rng, 1, 2))};
        node.type = pick(rng, themes);
        node.referent = random_referent(rng, shape.individual_chance);
        ids.push_back(node.id);
        g.insert_concept(std::move(node));
    }
    if (!ids.empty() && !relations.empty()) {
        const int edges = uniform(rng, 0, shape.max_edges);
        for (int e = 0; e < edges; ++e) {
            const TypeId type = pick(rng, relations);
            std::vector<NodeId> args;
            for (int a = 0; a < v.info(type).arity; ++a) args.push_back(pick(rng, ids));
            g.add_relation(type, std::move(args));
        }
    }
    if (depth > 0 && !nestings.empty()) {
        for (NodeId id : ids) {
            if (!chance(rng, shape.nest_chance)) continue;
            std::set<TypeId> used;
            const int count = chance(rng, 0.2) ? 2 : 1;
            for (int c = 0; c < count; ++c) {
                const TypeId type = pick(rng, nestings);
                if (!used.insert(type).second) continue;
                g.attach_nesting(id, type,
                                 random_level(rng, v, shape, depth - 1, GraphKind::Topical));
            }
        }
    }
    return g;
}

TypeId generalize(Rng& rng, const Closure& closure, TypeId t, bool allow_root) {
    if (chance(rng, 0.4)) return t;
    auto up = closure.strict_ancestors(t);
    if (!allow_root) up.erase(std::remove_if(up.begin(), up.end(), [](TypeId a) { return a.is_root(); }),
                             up.end());
    return up.empty() ? t : pick(rng, up);
}

ConceptualGraph query_level(Rng& rng, const Vocabulary& v, const Closure& closure,
                            const ConceptualGraph& target, const GraphShape& shape, int depth) {
    ConceptualGraph q(GraphKind::Unspecified);
    std::map<NodeId, NodeId> kept;
    for (const auto& node : target.nodes()) {
        if (!chance(rng, 0.6)) continue;
        ConceptNode copy;
        copy.id = node.id;
        copy.type = generalize(rng, closure, node.type, shape.allow_root_types);
        copy.referent = node.referent;
        if (!copy.referent.is_generic()) {
            if (chance(rng, 0.4)) copy.referent = Referent::generic();
            else if (chance(rng, 0.3)) copy.referent.language.reset();
        }
        if (depth > 0) {
            for (const auto& nesting : node.nestings) {
                if (!chance(rng, 0.6)) continue;
                copy.nestings.push_back(
                    Nesting{generalize(rng, closure, nesting.type, false),
                            query_level(rng, v, closure, nesting.graph, shape, depth - 1)});
            }
            std::sort(copy.nestings.begin(), copy.nestings.end(),
                      [](const Nesting& a, const Nesting& b) { return a.type < b.type; });
            // Generalizing two nestings onto one type would collide; keep the first.
            copy.nestings.erase(std::unique(copy.nestings.begin(), copy.nestings.end(),
                                            [](const Nesting& a, const Nesting& b) {
                                                return a.type == b.type;
                                            }),
                                copy.nestings.end());
        }
        kept[node.id] = node.id;
        q.insert_concept(std::move(copy));
    }
    for (const auto& edge : target.edges()) {
        const bool all = std::all_of(edge.args.begin(), edge.args.end(),
                                     [&](NodeId a) { return kept.count(a) > 0; });
        if (all && chance(rng, 0.7)) q.add_relation(generalize(rng, closure, edge.type, true), edge.args);
    }
    // Occasional perturbations that may break the match.
    const auto themes = ids_of(v, TypeKind::Theme, false);
    if (!themes.empty() && static_cast<int>(q.nodes().size()) < shape.max_nodes && chance(rng, 0.25)) {
        q.add_concept(pick(rng, themes), random_referent(rng, 0.2));
    }
    const auto relations = ids_of(v, TypeKind::Relation, false);
    if (!q.nodes().empty() && !relations.empty() && chance(rng, 0.2)) {
        const TypeId type = pick(rng, relations);
        std::vector<NodeId> args;
        for (int a = 0; a < v.info(type).arity; ++a) args.push_back(pick(rng, q.nodes()).id);
        q.add_relation(type, std::move(args));
    }
    return q;
}

} // namespace

ConceptualGraph random_graph(Rng& rng, const Vocabulary& v, const GraphShape& shape) {
    return random_level(rng, v, shape, shape.depth, GraphKind::Narrative);
}

ConceptualGraph random_query_for(Rng& rng, const Vocabulary& v, const ConceptualGraph& target,
                                 const GraphShape& shape) {
    if (chance(rng, 0.15)) {
        GraphShape small = shape;
        small.max_nodes = std::min(shape.max_nodes, 3);
        return random_level(rng, v, small, shape.depth, GraphKind::Unspecified);
    }
    const Closure closure(v);
    return query_level(rng, v, closure, target, shape, shape.depth);
}

AnnotationStore random_store(Rng& rng, const Vocabulary& v) {
    AnnotationStore store;
    const int assets = uniform(rng, 0, 3);
    std::vector<std::string> asset_ids;
    for (int i = 0; i < assets; ++i) {
        MediaAsset a;
        a.id = "asset-" + std::to_string(i);
        a.duration_ms = uniform(rng, 1000, 100000);
        a.uri = "file:///media/" + random_text(rng, 6) + ".mp4";
        if (chance(rng, 0.7)) a.languages = {"en"};
        if (chance(rng, 0.4)) a.languages.push_back("fr");
        asset_ids.push_back(a.id);
        store.add_asset(std::move(a));
    }
    if (asset_ids.empty()) return store;

    GraphShape shape;
    shape.max_nodes = 4;
    const auto themes = ids_of(v, TypeKind::Theme, false);
    const int annotations = uniform(rng, 0, 5);
    for (int i = 0; i < annotations; ++i) {
        SegmentAnnotation a;
        a.id = "a" + std::to_string(i + 1);
        a.segment.asset_id = pick(rng, asset_ids);
        const std::int64_t duration = store.asset(a.segment.asset_id)->duration_ms;
        a.segment.start_ms = uniform(rng, 0, static_cast<int>(duration) - 1);
        a.segment.end_ms = uniform(rng, static_cast<int>(a.segment.start_ms) + 1, static_cast<int>(duration));
        for (const auto& lang : {std::string("en"), std::string("fr")}) {
            if (!chance(rng, 0.5)) continue;
            LocalizedFields f;
            // An entry with neither text has no line in the file.
            if (chance(rng, 0.8)) f.title = random_text(rng, 10);
            if (!f.title || chance(rng, 0.5)) f.summary = random_text(rng, 20);
            a.fields[lang] = std::move(f);
        }
        const int keywords = uniform(rng, 0, 3);
        for (int k = 0; k < keywords; ++k) {
            Keyword kw;
            kw.text = pick(rng, kKeywords);
            kw.language = pick(rng, kLanguages);
            kw.kind = chance(rng, 0.5) ? KeywordKind::ExtractedTerm : KeywordKind::Paraphrase;
            if (chance(rng, 0.3)) kw.controlled = "peoples";
            a.keywords.push_back(std::move(kw));
        }
        a.graph = random_graph(rng, v, shape);
        if (!themes.empty() && chance(rng, 0.3)) a.marks.push_back(pick(rng, themes));
        if (chance(rng, 0.4)) a.origin = TemplateOrigin{"T" + std::to_string(uniform(rng, 1, 4)), "essentials"};
        store.insert(std::move(a));
    }
    return store;
}

// ---------------------------------------------------------------------------

Closure::Closure(const Vocabulary& v) : v_(v) {}

bool Closure::subsumes(TypeId general, TypeId specific) const {
    if (general.kind() != specific.kind()) return false;
    const auto g = v_.position(general);
    const auto s = v_.position(specific);
    if (!g || !s) return false;
    std::vector<std::size_t> stack{*s};
    std::set<std::size_t> seen{*s};
    while (!stack.empty()) {
        const std::size_t at = stack.back();
        stack.pop_back();
        if (at == *g) return true;
        for (std::size_t p : v_.info(specific.kind(), at).parents) {
            if (seen.insert(p).second) stack.push_back(p);
        }
        // Every declared type hangs below the root, even when listed without parents.
        if (at != 0 && seen.insert(0).second) stack.push_back(0);
    }
    return false;
}

std::vector<TypeId> Closure::strict_ancestors(TypeId t) const {
    std::vector<TypeId> out;
    for (std::size_t p = 0; p < v_.size(t.kind()); ++p) {
        const auto& info = v_.info(t.kind(), p);
        const TypeId id = info.id ? *info.id : TypeId::root(t.kind());
        if (id != t && subsumes(id, t)) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

namespace {

bool referent_ok(const Referent& q, const Referent& t) {
    if (q.is_generic()) return true;
    if (t.is_generic()) return false;
    if (q.keyword != t.keyword) return false;
    return !q.language.has_value() || q.language == t.language;
}

std::uint64_t oracle_level(const ConceptualGraph& q, const ConceptualGraph& t,
                           const Closure& closure) {
    const std::size_t n = q.nodes().size();
    const std::size_t m = t.nodes().size();
    if (m > 8) throw Error(ErrorCode::SizeLimit, "oracle target level exceeds 8 nodes");
    if (n == 0) return 1;
    if (m == 0) return 0;

    // weight[i][j]: ways the nestings of query node i fit under target node j,
    // zero when the node pair itself is incompatible.
    std::vector<std::vector<std::uint64_t>> weight(n, std::vector<std::uint64_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const ConceptNode& qn = q.nodes()[i];
        for (std::size_t j = 0; j < m; ++j) {
            const ConceptNode& tn = t.nodes()[j];
            if (!closure.subsumes(qn.type, tn.type) || !referent_ok(qn.referent, tn.referent)) {
                continue;
            }
            std::uint64_t w = 1;
            for (const auto& qnest : qn.nestings) {
                std::uint64_t options = 0;
                for (const auto& tnest : tn.nestings) {
                    if (closure.subsumes(qnest.type, tnest.type)) {
                        options += oracle_level(qnest.graph, tnest.graph, closure);
                    }
                }
                w *= options;
            }
            weight[i][j] = w;
        }
    }

    std::map<NodeId, std::size_t> qindex;
    for (std::size_t i = 0; i < n; ++i) qindex[q.nodes()[i].id] = i;

    std::uint64_t total = 0;
    std::vector<std::size_t> f(n, 0);
    while (true) {
        std::uint64_t w = 1;
        for (std::size_t i = 0; i < n && w; ++i) w *= weight[i][f[i]];
        if (w) {
            for (const auto& qe : q.edges()) {
                bool found = false;
                for (const auto& te : t.edges()) {
                    if (te.args.size() != qe.args.size() || !closure.subsumes(qe.type, te.type)) continue;
                    bool same = true;
                    for (std::size_t a = 0; a < qe.args.size() && same; ++a) {
                        same = t.nodes()[f[qindex.at(qe.args[a])]].id == te.args[a];
                    }
                    if (same) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    w = 0;
                    break;
                }
            }
            total += w;
        }
        // Next assignment in base-m counting order.
        std::size_t k = 0;
        while (k < n && ++f[k] == m) f[k++] = 0;
        if (k == n) break;
    }
    return total;
}

void check_level(const ConceptualGraph& q, const ConceptualGraph& t, const Closure& closure,
                 const ProjectionMapping& m, const std::string& where,
                 std::vector<std::string>& out) {
    std::map<NodeId, NodeId> image;
    for (const auto& [qn, tn] : m.concept_map) {
        if (!image.emplace(qn, tn).second) out.push_back(where + "query node mapped twice");
    }
    if (image.size() != q.nodes().size()) out.push_back(where + "concept map does not cover the query");
    for (const auto& qn : q.nodes()) {
        auto it = image.find(qn.id);
        if (it == image.end()) {
            out.push_back(where + "node " + std::to_string(qn.id.value) + " unmapped");
            continue;
        }
        const ConceptNode* tn = t.find(it->second);
        if (!tn) {
            out.push_back(where + "image of " + std::to_string(qn.id.value) + " missing");
            continue;
        }
        if (!closure.subsumes(qn.type, tn->type)) out.push_back(where + "type not specialized");
        if (!referent_ok(qn.referent, tn->referent)) out.push_back(where + "referent mismatch");

        for (const auto& qnest : qn.nestings) {
            const NestedProjection* np = nullptr;
            for (const auto& candidate : m.nested) {
                if (candidate.query_node == qn.id && candidate.query_nesting == qnest.type) {
                    if (np) out.push_back(where + "nesting mapped twice");
                    np = &candidate;
                }
            }
            if (!np) {
                out.push_back(where + "nesting " + qnest.type.str() + " unmapped");
                continue;
            }
            const Nesting* tnest = tn->nesting(np->target_nesting);
            if (!tnest) {
                out.push_back(where + "target nesting missing");
                continue;
            }
            if (!closure.subsumes(qnest.type, tnest->type)) out.push_back(where + "nesting not specialized");
            check_level(qnest.graph, tnest->graph, closure, np->mapping,
                        where + std::to_string(qn.id.value) + "/" + qnest.type.str() + "/", out);
        }
    }
    std::size_t nestings = 0;
    for (const auto& qn : q.nodes()) nestings += qn.nestings.size();
    if (m.nested.size() != nestings) out.push_back(where + "unexpected nested maps");

    std::set<std::size_t> seen;
    for (const auto& [qe, te] : m.edge_map) {
        if (qe >= q.edges().size() || te >= t.edges().size()) {
            out.push_back(where + "edge index out of range");
            continue;
        }
        seen.insert(qe);
        const RelationEdge& a = q.edges()[qe];
        const RelationEdge& b = t.edges()[te];
        if (!closure.subsumes(a.type, b.type)) out.push_back(where + "relation not specialized");
        if (a.args.size() != b.args.size()) {
            out.push_back(where + "edge arity differs");
            continue;
        }
        for (std::size_t k = 0; k < a.args.size(); ++k) {
            auto it = image.find(a.args[k]);
            if (it == image.end() || it->second != b.args[k]) {
                out.push_back(where + "edge argument not preserved");
            }
        }
    }
    if (seen.size() != q.edges().size() || m.edge_map.size() != q.edges().size()) {
        out.push_back(where + "edge map does not cover the query");
    }
}

} // namespace

std::uint64_t count_projections_oracle(const ConceptualGraph& query,
                                       const ConceptualGraph& target, const Vocabulary& v) {
    const Closure closure(v);
    return oracle_level(query, target, closure);
}

std::vector<std::string> check_mapping(const ConceptualGraph& query, const ConceptualGraph& target,
                                       const Vocabulary& v, const ProjectionMapping& m) {
    std::vector<std::string> out;
    check_level(query, target, Closure(v), m, "", out);
    return out;
}

ConceptualGraph with_node_type(const ConceptualGraph& g, const NodePath& path, TypeId type) {
    ConceptualGraph copy = g;
    ConceptNode* node = find_node(copy, path);
    if (!node) throw Error(ErrorCode::UnknownNode, "no node at " + path.str());
    node->type = type;
    return copy;
}

namespace {

void collect(const ConceptualGraph& g, NodePath prefix, std::vector<NodePath>& out) {
    for (const auto& node : g.nodes()) {
        NodePath p = prefix;
        p.node = node.id;
        out.push_back(p);
        for (const auto& nesting : node.nestings) {
            NodePath inner = prefix;
            inner.nesting_steps.emplace_back(node.id, nesting.type);
            collect(nesting.graph, inner, out);
        }
    }
}

} // namespace

std::vector<NodePath> all_paths(const ConceptualGraph& g) {
    std::vector<NodePath> out;
    collect(g, NodePath{}, out);
    return out;
}

} // namespace pci::testing
