#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "divcdcr/model.hpp"

namespace divcdcr {

// Reads the native corpus format (`.dcdcr.json`). Structural invariants are
// checked here: id uniqueness, span bounds, edge endpoints, closed
// vocabularies. Annotation-scheme rules are left to validate_corpus.
//
// Throws Error with kind SyntaxError, SchemaError, DuplicateId or BadEnum.
Corpus parse_corpus(std::string_view input);

// Canonical, byte-deterministic serialization. Discourses and documents are
// sorted by id, mentions by (start, end, id), relations by (source, target).
std::string export_corpus(const Corpus& corpus);

Corpus read_corpus_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace divcdcr
