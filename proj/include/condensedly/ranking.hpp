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

// Paragraph ranking against abstract sentences.
//
// Every abstract sentence acts as a query. Sections are ranked for it by
// RSS, the product of keyword coverage (share of the sentence's keywords
// found anywhere in the section) and spread (share of the section's
// paragraphs hit by at least one of them). Inside a section, paragraphs
// are ranked by PR-ISR:
//
//   pr_isr(qs, p) = sum over k in K(qs) & K(p) of  tf(k, p) / |p| * isr(k)
//   isr(k)        = ln(1 + m / sr(k))
//
// where m is the number of abstract sentences and sr(k) the number of
// them containing k. IO, the share of K(qs) present in K(p), is reported
// alongside as the association ratio.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "condensedly/corpus.hpp"
#include "condensedly/document.hpp"

namespace condensedly::ranking {

struct SentenceParagraphScore {
  std::size_t qs_index = 0;
  std::string paragraph_id;
  double io = 0.0;
  double pr_isr = 0.0;
};

struct SectionScore {
  std::size_t qs_index = 0;
  std::size_t section_id = 0;
  double coverage = 0.0;
  double spread = 0.0;
  double rss = 0.0;
};

struct CondensedEntry {
  std::size_t qs_index = 0;
  std::size_t section_id = 0;
  std::string paragraph_id;
  SectionScore section;
  SentenceParagraphScore scores;
};

struct CondensedText {
  std::string doc_id;
  std::vector<CondensedEntry> entries;
  std::vector<std::string> rendered_paragraph_ids;

  const CondensedEntry* entry_for(std::size_t qs_index) const;
};

class RankingError : public std::runtime_error {
 public:
  enum class Kind { kKeywordNotInAbstract, kEmptyParagraph, kEmptySection };

  RankingError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

double io_ratio(const KeywordSet& query, const KeywordSet& paragraph);
double io_ratio(const AbstractSentence& qs, const Paragraph& p);

// Throws kKeywordNotInAbstract when no sentence contains `keyword`.
double isr(const Keyword& keyword, std::span<const AbstractSentence> abstract);

// Throws kEmptyParagraph when `p` has no tokens.
double pr_isr(const AbstractSentence& qs, const Paragraph& p,
              std::span<const AbstractSentence> abstract);

// Throws kEmptySection when `s` has no paragraphs.
SectionScore rss(const AbstractSentence& qs, const Section& s);

CondensedText condense(const Document& doc);

Json condensed_to_json(const CondensedText& ct);
Json entry_to_json(const CondensedEntry& entry);

}  // namespace condensedly::ranking
