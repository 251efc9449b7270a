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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "condensedly/text.hpp"

namespace condensedly {

struct AbstractSentence {
  std::size_t index = 0;
  std::string text;
  KeywordSet keywords;
};

struct Paragraph {
  std::string paragraph_id;  // "<section_id>:<ordinal>"
  std::size_t section_id = 0;
  std::size_t ordinal = 0;
  std::string text;
  std::vector<Token> tokens;
  KeywordSet keywords;
};

struct Section {
  std::size_t section_id = 0;
  std::string title;
  std::vector<Paragraph> paragraphs;
};

// A parsed article. Built through DocumentBuilder, which derives tokens,
// keywords, ordinals and ids from the raw text so these never disagree.
struct Document {
  std::string doc_id;
  std::string title;
  std::vector<AbstractSentence> abstract_sentences;
  std::vector<Section> sections;

  std::size_t paragraph_count() const;
  const Paragraph* find_paragraph(std::string_view paragraph_id) const;
};

class DocumentError : public std::runtime_error {
 public:
  enum class Kind { kMalformedXml, kMissingAbstract, kEmptyBody, kInvalid, kIo };

  DocumentError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class DocumentBuilder {
 public:
  explicit DocumentBuilder(std::string doc_id);

  DocumentBuilder& title(std::string_view title);
  // Appends every sentence of `text` to the abstract.
  DocumentBuilder& abstract_text(std::string_view text);
  DocumentBuilder& abstract_sentence(std::string_view sentence);
  DocumentBuilder& section(std::string_view title);
  // Adds a paragraph to the most recent section; empty text is ignored.
  DocumentBuilder& paragraph(std::string_view text);

  // Drops sections without paragraphs, renumbers, and validates.
  // Throws DocumentError (kInvalid for a missing id, kMissingAbstract,
  // kEmptyBody).
  Document build() &&;

 private:
  Document doc_;
};

// JATS/PMC article XML. `fallback_id` is used when the article carries no
// PMID. Throws DocumentError.
Document parse_jats(std::string_view xml, std::string_view fallback_id = {});

// Plain-text fallback: the first blank-line-separated block is the
// abstract (an optional leading "# Title" line, alone or atop the block,
// sets the title); every later block is a one-paragraph section,
// optionally headed "## Title".
Document parse_plain_text(std::string_view text, std::string_view doc_id);

}  // namespace condensedly
