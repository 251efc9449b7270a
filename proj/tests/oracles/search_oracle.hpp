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

// Linear-scan reference for Boolean retrieval plus a random query
// generator. The scan evaluates every query against every document's
// term set directly, with NOT as plain complement; no index is involved.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "condensedly/document.hpp"
#include "condensedly/query.hpp"
#include "condensedly/synth.hpp"
#include "condensedly/text.hpp"

namespace condensedly::oracle {

inline std::set<std::string> document_terms(const Document& doc) {
  std::set<std::string> terms;
  auto add = [&](const std::string& text) {
    for (const Token& t : tokenize(text)) {
      if (auto s = normalize_term(t.surface)) terms.insert(*s);
    }
  };
  add(doc.title);
  for (const auto& s : doc.abstract_sentences) add(s.text);
  for (const auto& sec : doc.sections) {
    for (const auto& p : sec.paragraphs) add(p.text);
  }
  return terms;
}

inline bool matches(const search::Query& q, const Document& doc, const std::set<std::string>& terms) {
  using K = search::Query::Kind;
  switch (q.kind) {
    case K::kTerm:
      return terms.count(q.value) > 0;
    case K::kPmid:
      return doc.doc_id == q.value;
    case K::kNot:
      return !matches(q.children[0], doc, terms);
    case K::kAnd:
      return matches(q.children[0], doc, terms) && matches(q.children[1], doc, terms);
    case K::kOr:
      return matches(q.children[0], doc, terms) || matches(q.children[1], doc, terms);
  }
  return false;
}

// Doc ids matching `q`, sorted.
inline std::vector<std::string> linear_scan(const search::Query& q, const std::vector<Document>& docs) {
  std::vector<std::string> out;
  for (const Document& d : docs) {
    if (matches(q, d, document_terms(d))) out.push_back(d.doc_id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random query text over `words`, rendered with explicit operators,
// implicit conjunction and parentheses. Regenerates until the parse is a
// valid positive query, so every result is well-formed.
class QueryGenerator {
 public:
  QueryGenerator(synth::Rng& rng, std::vector<std::string> words, std::vector<std::string> pmids)
      : rng_(rng), words_(std::move(words)), pmids_(std::move(pmids)) {}

  std::string next() {
    while (true) {
      std::string q = expr(3);
      try {
        search::parse_query(q);
        return q;
      } catch (const search::QueryError&) {
      }
    }
  }

 private:
  std::string atom() {
    if (!pmids_.empty() && rng_.chance(1, 12)) return "pmid:" + pmids_[rng_.index(pmids_.size())];
    return words_[rng_.index(words_.size())];
  }

  std::string expr(int depth) {
    if (depth == 0 || rng_.chance(1, 3)) return atom();
    switch (rng_.index(5)) {
      case 0:
        return expr(depth - 1) + " AND " + expr(depth - 1);
      case 1:
        return expr(depth - 1) + " OR " + expr(depth - 1);
      case 2:
        return expr(depth - 1) + " " + expr(depth - 1);
      case 3:
        return expr(depth - 1) + " AND NOT " + expr(depth - 1);
      default:
        return "(" + expr(depth - 1) + ")";
    }
  }

  synth::Rng& rng_;
  std::vector<std::string> words_;
  std::vector<std::string> pmids_;
};

}  // namespace condensedly::oracle
