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

// Text normalization shared by every module: tokenization, sentence
// segmentation and the keyword pipeline (lowercase, stopword filter,
// Porter stem).

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace condensedly {

struct Token {
  std::string surface;  // ASCII-lowercased
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Keyword {
  std::string stem;

  friend auto operator<=>(const Keyword&, const Keyword&) = default;
};

using KeywordSet = std::set<Keyword>;

// Bytes that can be part of a word: ASCII letters and digits, and any
// non-ASCII byte so UTF-8 sequences are never split.
inline bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z') || u >= 0x80;
}

std::string ascii_lower(std::string_view s);

// Collapses whitespace runs to a single space and trims both ends.
std::string normalize_whitespace(std::string_view s);

// Maximal runs of word bytes, joined across single interior hyphens
// ("p53-mediated" is one token). Punctuation and whitespace separate.
std::vector<Token> tokenize(std::string_view text);

// Rule-based splitter. A boundary is '.', '!' or '?' followed by
// whitespace and then an uppercase letter or a digit, unless the word
// ending at the mark is a protected abbreviation or a single capital.
std::vector<std::string> segment_sentences(std::string_view text);

// The closed abbreviation list consulted by segment_sentences, lowercase.
std::span<const std::string_view> protected_abbreviations();

// Embedded English stopword list, sorted.
std::span<const std::string_view> stopwords();
bool is_stopword(std::string_view lowercase_word);

// Maps one token surface to its keyword stem, or nullopt for stopwords.
// The stemmer is applied until the stem stops changing (trailing hyphens
// are dropped between rounds) so that every keyword is a fixed point of
// the pipeline.
std::optional<std::string> normalize_term(std::string_view surface);

KeywordSet extract_keywords(std::string_view text);
KeywordSet keywords_of(std::span<const Token> tokens);

}  // namespace condensedly
