#include "pci/vocabulary.hpp"

#include <set>

namespace pci {

Vocabulary assign_identifiers(const Vocabulary& v) {
    VocabularyDraft draft = v.to_draft();

    for (TypeKind kind : {TypeKind::Theme, TypeKind::Relation, TypeKind::Nesting}) {
        const auto& types = v.types(kind);
        std::set<std::uint32_t> used;
        for (const auto& info : types) {
            if (info.id) used.insert(info.id->number());
        }
        std::uint32_t candidate = 1;
        auto next_free = [&] {
            while (used.count(candidate) != 0) ++candidate;
            used.insert(candidate);
            return candidate;
        };

        std::vector<std::optional<TypeId>> assigned(types.size());
        std::vector<bool> visited(types.size(), false);
        // Depth-first, pre-order; children are stored in ascending label order.
        std::vector<std::size_t> stack{0};
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            if (visited[p]) continue;
            visited[p] = true;
            if (!types[p].id) assigned[p] = TypeId(kind, next_free());
            const auto& children = types[p].children;
            for (auto it = children.rbegin(); it != children.rend(); ++it) {
                if (!visited[*it]) stack.push_back(*it);
            }
        }

        // Types keep their label, so label references resolve by id from here on.
        auto rename = [&](TypeRef& ref) {
            if (const auto* label = std::get_if<std::string>(&ref)) {
                if (auto p = v.position(kind, *label); p && assigned[*p]) ref = *assigned[*p];
            }
        };
        for (auto& decl : draft.types) {
            if (decl.kind == kind) {
                if (!decl.id) {
                    decl.id = assigned[*v.position(kind, decl.label)];
                }
                for (auto& parent : decl.parents) rename(parent);
            }
            if (kind == TypeKind::Theme && decl.signature) {
                for (auto& slot : *decl.signature) rename(slot);
            }
        }
    }
    return Vocabulary::build(draft);
}

} // namespace pci
