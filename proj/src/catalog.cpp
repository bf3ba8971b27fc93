#include "pci/annotation.hpp"
#include "pci/labels.hpp"

#include <set>

namespace pci {
namespace {

void collect_types(const ConceptualGraph& g, std::set<TypeId>& out) {
    for (const auto& node : g.nodes()) {
        out.insert(node.type);
        for (const auto& nesting : node.nestings) collect_types(nesting.graph, out);
    }
}

void collect_topic_types(const ConceptualGraph& g, const Vocabulary& v, TypeId topic,
                         std::set<TypeId>& out) {
    for (const auto& node : g.nodes()) {
        for (const auto& nesting : node.nestings) {
            if (v.contains(nesting.type) && v.subsumes(topic, nesting.type)) {
                collect_types(nesting.graph, out);
            } else {
                collect_topic_types(nesting.graph, v, topic, out);
            }
        }
    }
}

} // namespace

Catalog catalog(const AnnotationStore& store, const Vocabulary& v) {
    Catalog c;
    c.annotations = store.size();
    std::map<std::string, std::size_t> extra;
    for (const auto& g : template_groups()) c.groups.emplace_back(std::string(g.slug), 0);
    for (const auto& [id, a] : store.annotations()) {
        if (!a.origin) continue;
        bool known = false;
        for (auto& [slug, n] : c.groups) {
            if (slug == a.origin->group) {
                ++n;
                known = true;
            }
        }
        if (!known) ++extra[a.origin->group];
    }
    for (auto& [slug, n] : extra) c.groups.emplace_back(slug, n);

    const auto world = v.find(TypeKind::Theme, labels::kWorldPci);
    const auto topic = v.find(TypeKind::Nesting, labels::kDiscourseTopic);
    if (!world) return c;
    const std::vector<TypeId> themes = v.children(*world);
    std::vector<std::size_t> counts(themes.size(), 0);
    if (topic) {
        for (const auto& [id, a] : store.annotations()) {
            std::set<TypeId> present;
            collect_topic_types(a.graph, v, *topic, present);
            for (std::size_t i = 0; i < themes.size(); ++i) {
                for (TypeId t : present) {
                    if (t.kind() == TypeKind::Theme && v.contains(t) && v.subsumes(themes[i], t)) {
                        ++counts[i];
                        break;
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < themes.size(); ++i) c.themes.emplace_back(themes[i], counts[i]);
    return c;
}

std::string format_catalog(const Catalog& c, const Vocabulary& v) {
    std::string out = "annotations " + std::to_string(c.annotations) + "\n";
    for (const auto& [slug, n] : c.groups) out += "group " + slug + " " + std::to_string(n) + "\n";
    for (const auto& [type, n] : c.themes) {
        out += "theme " + type.str() + " " + text::quote(v.info(type).label) + " " +
               std::to_string(n) + "\n";
    }
    return out;
}

} // namespace pci
