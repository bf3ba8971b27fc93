#pragma once

#include <string_view>

// Labels the engine attaches behaviour to. A vocabulary that lacks one of
// them simply skips the corresponding check.
namespace pci::labels {

inline constexpr std::string_view kWorldPci = "World_PCI";
inline constexpr std::string_view kDiscourseDescription = "Discourse Description";
inline constexpr std::string_view kPragmaticDescription = "Pragmatic Description";
inline constexpr std::string_view kDiscourseType = "Discourse Type";
inline constexpr std::string_view kDiscourseTopic = "Discourse Topic";

} // namespace pci::labels
