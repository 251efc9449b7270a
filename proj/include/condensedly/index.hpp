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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "condensedly/corpus.hpp"
#include "condensedly/document.hpp"
#include "condensedly/query.hpp"

namespace condensedly::search {

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

// Documents are held in doc_id order and postings refer to them by
// position, so a postings list sorted by position is sorted by doc_id.
struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t tf = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct IndexedDoc {
  std::string doc_id;
  std::string title;
  std::uint32_t length = 0;  // token count over title, abstract and body

  friend bool operator==(const IndexedDoc&, const IndexedDoc&) = default;
};

struct SearchHit {
  std::string doc_id;
  double score = 0.0;
  std::string title;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

class IndexError : public std::runtime_error {
 public:
  enum class Kind { kDuplicateDocId, kIo, kFormatVersionMismatch, kChecksumMismatch };

  IndexError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using PostingMap = std::map<std::string, std::vector<Posting>, std::less<>>;

class InvertedIndex {
 public:
  InvertedIndex() = default;
  // Throws IndexError(kDuplicateDocId) when ids are not unique.
  static InvertedIndex build(std::span<const Document> docs);
  // Validates and assembles an index from raw parts (used by the loader).
  static InvertedIndex from_parts(std::vector<IndexedDoc> docs, PostingMap postings);

  std::size_t doc_count() const { return docs_.size(); }
  std::size_t term_count() const { return postings_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }

  const std::vector<IndexedDoc>& docs() const { return docs_; }
  const PostingMap& postings() const { return postings_; }
  const std::vector<Posting>* postings(std::string_view term) const;
  std::optional<std::uint32_t> find_doc(std::string_view doc_id) const;

  double bm25(std::string_view term, const Posting& posting) const;

 private:
  void finish();

  std::vector<IndexedDoc> docs_;
  PostingMap postings_;
  double avg_doc_length_ = 0.0;
};

// Boolean evaluation plus BM25 over the positive terms of the query.
// Hits are ordered by score descending, then doc_id ascending.
std::vector<SearchHit> execute(const Query& query, const InvertedIndex& index);

// Binary layout, all integers little-endian:
//   "CNDX" | u16 version | u32 ndocs | ndocs * (str id, str title, u32 len)
//   | u32 nterms | nterms * (str term, u32 n, n * (u32 doc_delta, u32 tf))
//   | u32 crc32 over every preceding byte
// where str is a u32 byte length followed by UTF-8 bytes and doc_delta is
// the gap to the previous posting's document position.
inline constexpr std::uint16_t kIndexFormatVersion = 1;

std::string serialize_index(const InvertedIndex& index);
InvertedIndex deserialize_index(std::string_view bytes);
// Writes through a temporary file and renames it into place.
void save_index(const InvertedIndex& index, const std::filesystem::path& path);
InvertedIndex load_index(const std::filesystem::path& path);

Json hits_to_json(std::span<const SearchHit> hits);

}  // namespace condensedly::search
