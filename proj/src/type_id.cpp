#include "pci/type_id.hpp"

#include <charconv>

namespace pci {

std::string_view to_string(TypeKind kind) {
    switch (kind) {
        case TypeKind::Theme: return "concept";
        case TypeKind::Relation: return "relation";
        case TypeKind::Nesting: return "nesting";
    }
    return "?";
}

char kind_prefix(TypeKind kind) {
    switch (kind) {
        case TypeKind::Theme: return 'T';
        case TypeKind::Relation: return 'R';
        case TypeKind::Nesting: return 'C';
    }
    return '?';
}

std::optional<TypeId> TypeId::parse(std::string_view text) {
    if (text.size() < 3 || text[1] != '-') {
        return std::nullopt;
    }
    TypeKind kind;
    switch (text[0]) {
        case 'T': kind = TypeKind::Theme; break;
        case 'R': kind = TypeKind::Relation; break;
        case 'C': kind = TypeKind::Nesting; break;
        default: return std::nullopt;
    }
    auto digits = text.substr(2);
    // Canonical rendering only: no sign, no leading zeros.
    if (digits.size() > 1 && digits[0] == '0') {
        return std::nullopt;
    }
    std::uint32_t number = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), number);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        return std::nullopt;
    }
    return TypeId(kind, number);
}

std::string TypeId::str() const {
    std::string out(1, kind_prefix(kind_));
    out += '-';
    out += std::to_string(number_);
    return out;
}

} // namespace pci
