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

// Read-only HTTP API over one immutable corpus snapshot.
//
//   GET /api/search?q=...&limit=N          {query, total, hits}
//   GET /api/articles/{id}                 article with entity spans
//   GET /api/articles/{id}/condensed       full condensed text
//   GET /api/articles/{id}/condensed?qs=K  {doc_id, qs_index, entry}
//   GET /api/articles/{id}/entities        {doc_id, entities}
//   GET /api/health                        {status, doc_count}
//
// Errors are {code, message} with code one of bad_query, not_found or
// internal. Every body is canonical JSON.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "condensedly/document.hpp"
#include "condensedly/index.hpp"
#include "condensedly/ner.hpp"
#include "condensedly/ranking.hpp"

namespace condensedly::service {

inline constexpr std::size_t kDefaultSearchLimit = 20;

struct Response {
  int status = 200;
  std::string body;

  friend bool operator==(const Response&, const Response&) = default;
};

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorpusSnapshot {
 public:
  struct Article {
    Document doc;
    ranking::CondensedText condensed;
    ner::DocumentAnnotations annotations;
    std::vector<ner::EntityCount> frequencies;
  };

  // Condenses and annotates every document. Throws SnapshotError when the
  // index and the documents disagree.
  static CorpusSnapshot build(std::vector<Document> docs, search::InvertedIndex index,
                              const ner::LexiconMatcher& matcher);
  // Lexicons are optional; without them only rule-based classes fire.
  static CorpusSnapshot load(const std::filesystem::path& corpus_dir,
                             const std::filesystem::path& index_path,
                             const std::optional<std::filesystem::path>& lexicon_dir);

  std::size_t doc_count() const { return articles_.size(); }
  const Article* find(std::string_view doc_id) const;
  const search::InvertedIndex& index() const { return index_; }

 private:
  std::map<std::string, Article, std::less<>> articles_;
  search::InvertedIndex index_;
};

using Params = std::multimap<std::string, std::string>;

Response handle_search(const CorpusSnapshot& snapshot, std::string_view q,
                       std::optional<std::string_view> limit = std::nullopt);
Response handle_article(const CorpusSnapshot& snapshot, std::string_view doc_id);
Response handle_condensed(const CorpusSnapshot& snapshot, std::string_view doc_id,
                          std::optional<std::string_view> qs = std::nullopt);
Response handle_entities(const CorpusSnapshot& snapshot, std::string_view doc_id);
Response handle_health(const CorpusSnapshot& snapshot);

// Dispatches a decoded GET path under /api. Never throws: unexpected
// failures become 500 internal.
Response route(const CorpusSnapshot& snapshot, std::string_view path, const Params& params);

Json article_to_json(const CorpusSnapshot::Article& article);

// HTTP front end. The snapshot is shared read-only by all worker threads.
class Server {
 public:
  Server(std::shared_ptr<const CorpusSnapshot> snapshot,
         std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds the socket; port 0 picks a free port. Returns the bound port.
  // Throws std::runtime_error when binding fails.
  int bind(const std::string& host, int port);
  // Serves on the bound socket until stop() is called.
  void run();
  void stop();
  // Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace condensedly::service
