#include "pci/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace pci {
namespace {

// Appends `b` to `a` with b's node ids shifted past a's largest id.
void append_disjoint(ConceptualGraph& a, const ConceptualGraph& b) {
    const std::uint32_t offset = a.nodes().empty() ? 0 : a.nodes().back().id.value;
    for (const auto& node : b.nodes()) {
        ConceptNode copy = node;
        copy.id.value += offset;
        a.insert_concept(std::move(copy));
    }
    for (const auto& edge : b.edges()) {
        std::vector<NodeId> args = edge.args;
        for (auto& arg : args) arg.value += offset;
        a.add_relation(edge.type, std::move(args));
    }
}

void absorb_nestings(ConceptNode& into, std::vector<Nesting> from) {
    for (auto& nesting : from) {
        auto it = std::find_if(into.nestings.begin(), into.nestings.end(),
                               [&](const Nesting& n) { return n.type == nesting.type; });
        if (it != into.nestings.end()) {
            append_disjoint(it->graph, nesting.graph);
        } else {
            auto pos = std::lower_bound(into.nestings.begin(), into.nestings.end(), nesting.type,
                                        [](const Nesting& n, TypeId t) { return n.type < t; });
            into.nestings.insert(pos, std::move(nesting));
        }
    }
}

} // namespace

ConceptualGraph merge_coreferent(const ConceptualGraph& g) {
    using Key = std::tuple<TypeId, std::string, std::optional<std::string>>;
    std::map<Key, NodeId> representative;
    std::map<NodeId, NodeId> redirect;
    std::vector<ConceptNode> kept;

    for (const auto& node : g.nodes()) {
        if (!node.referent.is_generic()) {
            Key key{node.type, node.referent.keyword, node.referent.language};
            auto [it, fresh] = representative.emplace(key, node.id);
            if (!fresh) {
                redirect[node.id] = it->second;
                for (auto& k : kept) {
                    if (k.id == it->second) {
                        absorb_nestings(k, node.nestings);
                        break;
                    }
                }
                continue;
            }
        }
        redirect[node.id] = node.id;
        kept.push_back(node);
    }

    ConceptualGraph out(g.kind());
    for (auto& node : kept) {
        for (auto& nesting : node.nestings) nesting.graph = merge_coreferent(nesting.graph);
        out.insert_concept(std::move(node));
    }
    std::set<RelationEdge, decltype([](const RelationEdge& a, const RelationEdge& b) {
                 return std::tie(a.type, a.args) < std::tie(b.type, b.args);
             })>
        seen;
    for (const auto& edge : g.edges()) {
        RelationEdge moved{edge.type, {}};
        for (NodeId arg : edge.args) moved.args.push_back(redirect.at(arg));
        if (seen.insert(moved).second) out.add_relation(moved.type, moved.args);
    }
    return out;
}

} // namespace pci
