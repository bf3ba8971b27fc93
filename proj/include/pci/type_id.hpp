#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace pci {

enum class TypeKind : std::uint8_t { Theme, Relation, Nesting };

std::string_view to_string(TypeKind kind);
char kind_prefix(TypeKind kind);

/// Identifier of a vocabulary type, rendered `T-<n>`, `R-<n>` or `C-<n>`.
///
/// Number 0 is reserved for the implicit root of each hierarchy (the
/// proprietor node); it may be referenced in files but never declared.
class TypeId {
public:
    constexpr TypeId() = default;
    constexpr TypeId(TypeKind kind, std::uint32_t number) : kind_(kind), number_(number) {}

    static constexpr TypeId root(TypeKind kind) { return TypeId(kind, 0); }
    static std::optional<TypeId> parse(std::string_view text);

    constexpr TypeKind kind() const { return kind_; }
    constexpr std::uint32_t number() const { return number_; }
    constexpr bool is_root() const { return number_ == 0; }

    std::string str() const;

    friend constexpr auto operator<=>(const TypeId&, const TypeId&) = default;

private:
    TypeKind kind_ = TypeKind::Theme;
    std::uint32_t number_ = 0;
};

} // namespace pci

template <>
struct std::hash<pci::TypeId> {
    std::size_t operator()(const pci::TypeId& id) const noexcept {
        return (static_cast<std::size_t>(id.kind()) << 32) ^ id.number();
    }
};
