#include "pci/projection.hpp"

#include "pci/labels.hpp"

#include <algorithm>
#include <tuple>

namespace pci {

NodeId ProjectionMapping::image(NodeId query_node) const {
    auto it = std::lower_bound(concept_map.begin(), concept_map.end(), query_node,
                               [](const auto& entry, NodeId key) { return entry.first < key; });
    if (it == concept_map.end() || it->first != query_node) {
        throw Error(ErrorCode::UnknownNode,
                    "query node " + std::to_string(query_node.value) + " is not mapped");
    }
    return it->second;
}

bool operator==(const ProjectionMapping& a, const ProjectionMapping& b) {
    return a.concept_map == b.concept_map && a.nested == b.nested && a.edge_map == b.edge_map;
}

bool operator<(const ProjectionMapping& a, const ProjectionMapping& b) {
    if (a.concept_map != b.concept_map) return a.concept_map < b.concept_map;
    if (!(a.nested == b.nested)) return a.nested < b.nested;
    return a.edge_map < b.edge_map;
}

bool operator==(const NestedProjection& a, const NestedProjection& b) {
    return a.query_node == b.query_node && a.query_nesting == b.query_nesting &&
           a.target_nesting == b.target_nesting && a.mapping == b.mapping;
}

bool operator<(const NestedProjection& a, const NestedProjection& b) {
    auto ka = std::tie(a.query_node, a.query_nesting, a.target_nesting);
    auto kb = std::tie(b.query_node, b.query_nesting, b.target_nesting);
    if (ka != kb) return ka < kb;
    return a.mapping < b.mapping;
}

namespace {

bool referent_matches(const Referent& q, const Referent& t) {
    if (q.is_generic()) return true;
    if (t.is_generic() || q.keyword != t.keyword) return false;
    return !q.language || q.language == t.language;
}

struct NestOption {
    TypeId target_nesting;
    std::vector<ProjectionMapping> mappings;
    std::uint64_t count = 0;
};

struct Level {
    std::vector<ProjectionMapping> mappings;
    std::uint64_t count = 0;
};

// Backtracking over query nodes, most constrained first, with forward
// checking along query edges. Nested queries are solved while candidate
// lists are built, so a host node only stays a candidate when every nesting
// it must carry has at least one projection.
class Matcher {
public:
    Matcher(const Vocabulary& v, bool materialize) : v_(v), materialize_(materialize) {}

    Level solve(const ConceptualGraph& q, const ConceptualGraph& t) {
        State s(q, t);
        s.qpos = positions(q, TypeKind::Theme);
        s.tpos = positions(t, TypeKind::Theme);
        const std::size_t n = q.nodes().size();
        const std::size_t m = t.nodes().size();

        s.nest.assign(n, std::vector<std::vector<std::vector<NestOption>>>(m));
        std::vector<std::vector<char>> domains(n, std::vector<char>(m, 0));
        for (std::size_t i = 0; i < n; ++i) {
            const ConceptNode& qn = q.nodes()[i];
            for (std::size_t j = 0; j < m; ++j) {
                const ConceptNode& tn = t.nodes()[j];
                if (!v_.subsumes(TypeKind::Theme, s.qpos[i], s.tpos[j])) continue;
                if (!referent_matches(qn.referent, tn.referent)) continue;
                auto options = nest_options(qn, tn);
                if (!options) continue;
                domains[i][j] = 1;
                s.nest[i][j] = std::move(*options);
            }
        }

        for (const auto& e : q.edges()) {
            const std::size_t qtype = relation_position(e.type);
            std::vector<std::size_t> compatible;
            for (std::size_t f = 0; f < t.edges().size(); ++f) {
                const auto& te = t.edges()[f];
                if (te.args.size() != e.args.size()) continue;
                if (!v_.subsumes(TypeKind::Relation, qtype, relation_position(te.type))) continue;
                compatible.push_back(f);
            }
            std::vector<std::size_t> vars;
            std::vector<std::vector<std::size_t>> target_args;
            for (NodeId a : e.args) vars.push_back(*q.index_of(a));
            for (std::size_t f : compatible) {
                std::vector<std::size_t> args;
                for (NodeId a : t.edges()[f].args) args.push_back(*t.index_of(a));
                target_args.push_back(std::move(args));
            }
            s.edges.push_back(EdgeConstraint{std::move(vars), std::move(compatible),
                                             std::move(target_args)});
        }
        s.incident.assign(n, {});
        for (std::size_t e = 0; e < s.edges.size(); ++e) {
            for (std::size_t var : s.edges[e].vars) {
                auto& list = s.incident[var];
                if (list.empty() || list.back() != e) list.push_back(e);
            }
        }

        s.assignment.assign(n, kUnassigned);
        search(s, domains);
        if (materialize_) std::sort(s.out.mappings.begin(), s.out.mappings.end());
        return std::move(s.out);
    }

private:
    static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

    struct EdgeConstraint {
        std::vector<std::size_t> vars;                     // query node index per argument
        std::vector<std::size_t> compatible;               // target edge indices
        std::vector<std::vector<std::size_t>> target_args; // target node index per argument
    };

    struct State {
        State(const ConceptualGraph& q_, const ConceptualGraph& t_) : q(q_), t(t_) {}
        const ConceptualGraph& q;
        const ConceptualGraph& t;
        std::vector<std::size_t> qpos, tpos;
        // nest[i][j][k]: target nestings able to host the k-th nesting of query node i
        // when it maps to target node j
        std::vector<std::vector<std::vector<std::vector<NestOption>>>> nest;
        std::vector<EdgeConstraint> edges;
        std::vector<std::vector<std::size_t>> incident;
        std::vector<std::size_t> assignment;
        Level out;
    };

    std::vector<std::size_t> positions(const ConceptualGraph& g, TypeKind kind) const {
        std::vector<std::size_t> out;
        out.reserve(g.nodes().size());
        for (const auto& node : g.nodes()) out.push_back(position(node.type, kind));
        return out;
    }

    std::size_t position(TypeId id, TypeKind kind) const {
        auto pos = id.kind() == kind ? v_.position(id) : std::nullopt;
        if (!pos) {
            throw Error(ErrorCode::UnknownType,
                        id.str() + " is not a " + std::string(to_string(kind)) +
                            " type of the vocabulary");
        }
        return *pos;
    }

    std::size_t relation_position(TypeId id) const { return position(id, TypeKind::Relation); }

    std::optional<std::vector<std::vector<NestOption>>> nest_options(const ConceptNode& qn,
                                                                     const ConceptNode& tn) {
        std::vector<std::vector<NestOption>> options;
        for (const auto& qnest : qn.nestings) {
            const std::size_t qtype = position(qnest.type, TypeKind::Nesting);
            std::vector<NestOption> choices;
            for (const auto& tnest : tn.nestings) {
                const std::size_t ttype = position(tnest.type, TypeKind::Nesting);
                if (!v_.subsumes(TypeKind::Nesting, qtype, ttype)) continue;
                Level sub = solve(qnest.graph, tnest.graph);
                if (sub.count == 0) continue;
                choices.push_back(NestOption{tnest.type, std::move(sub.mappings), sub.count});
            }
            if (choices.empty()) return std::nullopt;
            options.push_back(std::move(choices));
        }
        return options;
    }

    void search(State& s, const std::vector<std::vector<char>>& domains) {
        std::size_t best = kUnassigned;
        std::size_t best_size = 0;
        for (std::size_t i = 0; i < s.assignment.size(); ++i) {
            if (s.assignment[i] != kUnassigned) continue;
            const auto size = static_cast<std::size_t>(
                std::count(domains[i].begin(), domains[i].end(), char{1}));
            if (best == kUnassigned || size < best_size) {
                best = i;
                best_size = size;
            }
        }
        if (best == kUnassigned) {
            emit(s);
            return;
        }
        for (std::size_t j = 0; j < domains[best].size(); ++j) {
            if (!domains[best][j]) continue;
            s.assignment[best] = j;
            auto next = domains;
            if (forward_check(s, best, next)) search(s, next);
            s.assignment[best] = kUnassigned;
        }
    }

    // Narrows the domains of unassigned neighbours of `var` to values that
    // still have a supporting target edge. False when some domain empties.
    bool forward_check(const State& s, std::size_t var, std::vector<std::vector<char>>& domains) {
        for (std::size_t e : s.incident[var]) {
            const EdgeConstraint& c = s.edges[e];
            std::vector<std::size_t> support;
            for (std::size_t k = 0; k < c.compatible.size(); ++k) {
                bool agrees = true;
                for (std::size_t p = 0; p < c.vars.size() && agrees; ++p) {
                    const std::size_t a = s.assignment[c.vars[p]];
                    agrees = a == kUnassigned || a == c.target_args[k][p];
                }
                if (agrees) support.push_back(k);
            }
            if (support.empty()) return false;
            for (std::size_t p = 0; p < c.vars.size(); ++p) {
                const std::size_t y = c.vars[p];
                if (s.assignment[y] != kUnassigned) continue;
                std::vector<char> keep(domains[y].size(), 0);
                for (std::size_t k : support) keep[c.target_args[k][p]] = 1;
                bool any = false;
                for (std::size_t j = 0; j < keep.size(); ++j) {
                    domains[y][j] = domains[y][j] && keep[j];
                    any = any || domains[y][j];
                }
                if (!any) return false;
            }
        }
        return true;
    }

    void emit(State& s) {
        std::vector<std::pair<std::size_t, std::size_t>> edge_map;
        for (std::size_t e = 0; e < s.edges.size(); ++e) {
            const EdgeConstraint& c = s.edges[e];
            std::optional<std::size_t> witness;
            for (std::size_t k = 0; k < c.compatible.size() && !witness; ++k) {
                bool agrees = true;
                for (std::size_t p = 0; p < c.vars.size() && agrees; ++p) {
                    agrees = s.assignment[c.vars[p]] == c.target_args[k][p];
                }
                if (agrees) witness = c.compatible[k];
            }
            if (!witness) return;
            edge_map.emplace_back(e, *witness);
        }

        std::uint64_t count = 1;
        std::vector<std::pair<std::size_t, std::size_t>> slots; // (query node, nesting) indices
        std::vector<std::vector<const NestOption*>> choices;
        for (std::size_t i = 0; i < s.assignment.size(); ++i) {
            const auto& per_nesting = s.nest[i][s.assignment[i]];
            for (std::size_t k = 0; k < per_nesting.size(); ++k) {
                const auto& options = per_nesting[k];
                std::uint64_t sum = 0;
                std::vector<const NestOption*> list;
                for (const auto& option : options) {
                    sum += option.count;
                    list.push_back(&option);
                }
                count *= sum;
                choices.push_back(std::move(list));
                slots.emplace_back(i, k);
            }
        }
        s.out.count += count;
        if (!materialize_) return;

        ProjectionMapping base;
        for (std::size_t i = 0; i < s.assignment.size(); ++i) {
            base.concept_map.emplace_back(s.q.nodes()[i].id, s.t.nodes()[s.assignment[i]].id);
        }
        base.edge_map = std::move(edge_map);
        expand(s, base, slots, choices, 0);
    }

    // Cartesian product over every nesting slot of the current assignment.
    void expand(State& s, ProjectionMapping& partial,
                const std::vector<std::pair<std::size_t, std::size_t>>& slots,
                const std::vector<std::vector<const NestOption*>>& choices, std::size_t k) {
        if (k == slots.size()) {
            s.out.mappings.push_back(partial);
            return;
        }
        const ConceptNode& qn = s.q.nodes()[slots[k].first];
        const TypeId query_nesting = qn.nestings[slots[k].second].type;
        for (const NestOption* option : choices[k]) {
            for (const auto& inner : option->mappings) {
                partial.nested.push_back(
                    NestedProjection{qn.id, query_nesting, option->target_nesting, inner});
                expand(s, partial, slots, choices, k + 1);
                partial.nested.pop_back();
            }
        }
    }

    const Vocabulary& v_;
    bool materialize_;
};

} // namespace

std::vector<ProjectionMapping> project(const ConceptualGraph& query, const ConceptualGraph& target,
                                       const Vocabulary& v) {
    return Matcher(v, true).solve(query, target).mappings;
}

std::uint64_t count_projections(const ConceptualGraph& query, const ConceptualGraph& target,
                                const Vocabulary& v) {
    return Matcher(v, false).solve(query, target).count;
}

ConceptualGraph topic_query(const ConceptualGraph& query, const Vocabulary& v) {
    auto discourse_type = v.find(TypeKind::Theme, labels::kDiscourseType);
    auto discourse_topic = v.find(TypeKind::Nesting, labels::kDiscourseTopic);
    if (!discourse_type || !discourse_topic) {
        throw Error(ErrorCode::UnknownType,
                    "topic queries need Discourse Type and Discourse Topic in the vocabulary");
    }
    ConceptualGraph wrapper(GraphKind::Narrative);
    const NodeId host = wrapper.add_concept(*discourse_type, Referent::generic());
    wrapper.attach_nesting(host, *discourse_topic, query);
    return wrapper;
}

std::string format_mapping(const ProjectionMapping& m, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    std::string out;
    for (const auto& [q, t] : m.concept_map) {
        out += pad + "concept " + std::to_string(q.value) + " -> " + std::to_string(t.value) + "\n";
    }
    for (const auto& [q, t] : m.edge_map) {
        out += pad + "edge #" + std::to_string(q) + " -> #" + std::to_string(t) + "\n";
    }
    for (const auto& n : m.nested) {
        out += pad + "nest " + std::to_string(n.query_node.value) + " " + n.query_nesting.str() +
               " -> " + n.target_nesting.str() + "\n";
        out += format_mapping(n.mapping, indent + 2);
    }
    return out;
}

std::string format_results(const std::vector<QueryResult>& results, bool explain) {
    std::string out;
    for (const auto& r : results) {
        out += "match " + r.annotation_id + " " + r.asset_id + " " + std::to_string(r.start_ms) +
               "-" + std::to_string(r.end_ms) + " count=" + std::to_string(r.match_count) + "\n";
        if (!explain) continue;
        for (std::size_t i = 0; i < r.mappings.size(); ++i) {
            out += "  mapping " + std::to_string(i + 1) + "\n";
            out += format_mapping(r.mappings[i], 4);
        }
    }
    return out;
}

} // namespace pci
