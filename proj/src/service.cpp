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

#include "condensedly/service.hpp"

#include <charconv>
#include <utility>

#include "condensedly/corpus.hpp"
#include "condensedly/query.hpp"

namespace condensedly::service {
namespace {

Response json_response(int status, const Json& body) { return {status, canonical_dump(body)}; }

Response error(int status, std::string_view code, std::string_view message) {
  return json_response(status, {{"code", code}, {"message", message}});
}

Response not_found(std::string_view what) { return error(404, "not_found", what); }

std::optional<std::size_t> parse_count(std::string_view s) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<std::string_view> param(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return std::string_view(it->second);
}

}  // namespace

CorpusSnapshot CorpusSnapshot::build(std::vector<Document> docs, search::InvertedIndex index,
                                     const ner::LexiconMatcher& matcher) {
  if (index.doc_count() != docs.size()) {
    throw SnapshotError("index holds " + std::to_string(index.doc_count()) +
                        " documents but the corpus has " + std::to_string(docs.size()));
  }
  CorpusSnapshot snapshot;
  for (Document& doc : docs) {
    if (!index.find_doc(doc.doc_id)) {
      throw SnapshotError("document " + doc.doc_id + " is missing from the index");
    }
    Article article;
    article.condensed = ranking::condense(doc);
    for (const std::string& id : article.condensed.rendered_paragraph_ids) {
      if (!doc.find_paragraph(id)) {
        throw SnapshotError("condensed paragraph " + id + " does not resolve in " + doc.doc_id);
      }
    }
    article.annotations = ner::annotate(doc, matcher);
    article.frequencies = ner::entity_frequencies(article.annotations);
    if (snapshot.articles_.contains(doc.doc_id)) {
      throw SnapshotError("duplicate document " + doc.doc_id);
    }
    std::string id = doc.doc_id;
    article.doc = std::move(doc);
    snapshot.articles_.emplace(std::move(id), std::move(article));
  }
  snapshot.index_ = std::move(index);
  return snapshot;
}

CorpusSnapshot CorpusSnapshot::load(const std::filesystem::path& corpus_dir,
                                    const std::filesystem::path& index_path,
                                    const std::optional<std::filesystem::path>& lexicon_dir) {
  std::vector<ner::Lexicon> lexicons;
  if (lexicon_dir) lexicons = ner::load_lexicons(*lexicon_dir);
  ner::LexiconMatcher matcher(lexicons);
  return build(load_corpus(corpus_dir), search::load_index(index_path), matcher);
}

const CorpusSnapshot::Article* CorpusSnapshot::find(std::string_view doc_id) const {
  auto it = articles_.find(doc_id);
  return it == articles_.end() ? nullptr : &it->second;
}

Json article_to_json(const CorpusSnapshot::Article& article) {
  const Document& doc = article.doc;
  Json abstract = Json::array();
  for (const AbstractSentence& s : doc.abstract_sentences) {
    abstract.push_back({{"entities", ner::entities_to_json(article.annotations.abstract[s.index])},
                        {"index", s.index},
                        {"text", s.text}});
  }
  Json sections = Json::array();
  for (std::size_t si = 0; si < doc.sections.size(); ++si) {
    const Section& section = doc.sections[si];
    Json paragraphs = Json::array();
    for (std::size_t pi = 0; pi < section.paragraphs.size(); ++pi) {
      const Paragraph& p = section.paragraphs[pi];
      paragraphs.push_back({{"entities", ner::entities_to_json(article.annotations.sections[si][pi])},
                            {"paragraph_id", p.paragraph_id},
                            {"text", p.text}});
    }
    sections.push_back({{"paragraphs", std::move(paragraphs)},
                        {"section_id", section.section_id},
                        {"title", section.title}});
  }
  return {{"abstract_sentences", std::move(abstract)},
          {"doc_id", doc.doc_id},
          {"sections", std::move(sections)},
          {"title", doc.title}};
}

Response handle_search(const CorpusSnapshot& snapshot, std::string_view q,
                       std::optional<std::string_view> limit) {
  std::size_t max_hits = kDefaultSearchLimit;
  if (limit) {
    auto parsed = parse_count(*limit);
    if (!parsed) return error(400, "bad_query", "limit must be a non-negative integer");
    max_hits = *parsed;
  }
  std::vector<search::SearchHit> hits;
  try {
    hits = search::execute(search::parse_query(q), snapshot.index());
  } catch (const search::QueryError& e) {
    return error(400, "bad_query", e.what());
  }
  const std::size_t total = hits.size();
  if (hits.size() > max_hits) hits.resize(max_hits);
  return json_response(200, {{"hits", search::hits_to_json(hits)},
                             {"query", q},
                             {"total", total}});
}

Response handle_article(const CorpusSnapshot& snapshot, std::string_view doc_id) {
  const auto* article = snapshot.find(doc_id);
  if (!article) return not_found("no article " + std::string(doc_id));
  return json_response(200, article_to_json(*article));
}

Response handle_condensed(const CorpusSnapshot& snapshot, std::string_view doc_id,
                          std::optional<std::string_view> qs) {
  const auto* article = snapshot.find(doc_id);
  if (!article) return not_found("no article " + std::string(doc_id));
  if (!qs) return json_response(200, ranking::condensed_to_json(article->condensed));

  auto index = parse_count(*qs);
  if (!index) return error(400, "bad_query", "qs must be a non-negative integer");
  if (*index >= article->doc.abstract_sentences.size()) {
    return not_found("article " + std::string(doc_id) + " has no abstract sentence " +
                     std::to_string(*index));
  }
  const auto* entry = article->condensed.entry_for(*index);
  return json_response(200, {{"doc_id", article->doc.doc_id},
                             {"entry", entry ? ranking::entry_to_json(*entry) : Json(nullptr)},
                             {"qs_index", *index}});
}

Response handle_entities(const CorpusSnapshot& snapshot, std::string_view doc_id) {
  const auto* article = snapshot.find(doc_id);
  if (!article) return not_found("no article " + std::string(doc_id));
  return json_response(200, {{"doc_id", article->doc.doc_id},
                             {"entities", ner::frequencies_to_json(article->frequencies)}});
}

Response handle_health(const CorpusSnapshot& snapshot) {
  return json_response(200, {{"doc_count", snapshot.doc_count()}, {"status", "ok"}});
}

Response route(const CorpusSnapshot& snapshot, std::string_view path, const Params& params) {
  try {
    if (path == "/api/health") return handle_health(snapshot);
    if (path == "/api/search") {
      auto q = param(params, "q");
      if (!q) return error(400, "bad_query", "missing parameter q");
      return handle_search(snapshot, *q, param(params, "limit"));
    }
    constexpr std::string_view kArticles = "/api/articles/";
    if (path.starts_with(kArticles)) {
      std::string_view rest = path.substr(kArticles.size());
      std::size_t slash = rest.find('/');
      std::string_view id = rest.substr(0, slash);
      if (!id.empty()) {
        if (slash == std::string_view::npos) return handle_article(snapshot, id);
        std::string_view tail = rest.substr(slash);
        if (tail == "/condensed") return handle_condensed(snapshot, id, param(params, "qs"));
        if (tail == "/entities") return handle_entities(snapshot, id);
      }
    }
    return not_found("no route for " + std::string(path));
  } catch (const std::exception& e) {
    return error(500, "internal", e.what());
  }
}

}  // namespace condensedly::service
