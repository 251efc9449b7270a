// Copyright 2026 The Condensedly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "condensedly/document.hpp"

namespace condensedly {

using Json = nlohmann::json;

// Compact JSON with object keys in byte order and every floating-point
// value printed with exactly six decimals. Integers print as integers.
std::string canonical_dump(const Json& value);

Json document_to_json(const Document& doc);

// Rebuilds a Document from its canonical JSON. Only the source text is
// read back; tokens and keywords are re-derived and the stored ids are
// checked against the derived ones. Throws DocumentError(kInvalid).
Document document_from_json(const Json& value);

// Reads a .xml (JATS), .txt (plain fallback) or .json (canonical) file.
// The file stem becomes the id when the content carries none.
Document load_document_file(const std::filesystem::path& path);

// File name used for a document inside a corpus directory.
std::string corpus_file_name(std::string_view doc_id);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

// Writes <dir>/<corpus_file_name(id)> holding the canonical JSON.
void save_document(const Document& doc, const std::filesystem::path& dir);

// Loads every *.json file in `dir`, ordered by doc_id. Throws
// DocumentError on unreadable or duplicate documents.
std::vector<Document> load_corpus(const std::filesystem::path& dir);

}  // namespace condensedly
