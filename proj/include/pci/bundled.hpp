#pragma once

#include "pci/annotation.hpp"
#include "pci/controlled_vocabulary.hpp"
#include "pci/report.hpp"
#include "pci/vocabulary.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pci {

/// The shipped ontology: vocabulary, template catalogue and controlled
/// vocabulary excerpts.
struct BundledData {
    Vocabulary vocabulary;
    std::vector<Template> templates;
    ControlledVocabularySet controlled;
};

/// `$PCI_DATA_DIR` when set, else the data directory of the source tree.
std::filesystem::path default_data_dir();

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Checks every `<hex>  <path>` line of `MANIFEST.sha256` in `dir`.
/// Throws Error(Io) for a missing file and Error(Checksum) on mismatch.
void verify_manifest(const std::filesystem::path& dir);

/// Loads `pci.vocab`, `templates.pci` and `cv/*.cv` after verifying the
/// manifest. Throws ValidationFailure(StructureDrift) when the vocabulary or
/// templates drift from the expected shape.
BundledData load_bundled(const std::filesystem::path& dir = default_data_dir());

/// Hierarchy counts and memberships the bundled vocabulary must keep. An
/// extra nesting type is reported as a warning; everything else as errors.
ValidationReport verify_structure(const Vocabulary& v);

/// Each template well-formed with a topic-bearing Discourse Type node, and
/// the groups exactly the four known ones, pairwise distinct.
ValidationReport verify_templates(const std::vector<Template>& templates, const Vocabulary& v);

} // namespace pci
