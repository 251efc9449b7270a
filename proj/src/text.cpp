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

#include "condensedly/text.hpp"

#include <algorithm>

#include "condensedly/porter.hpp"

namespace condensedly {
namespace {

constexpr std::string_view kStopwordList[] = {
    "a",          "about",     "above",    "after",    "again",
    "against",    "al",        "all",      "also",     "although",
    "am",         "among",     "an",       "and",      "any",
    "are",        "as",        "at",       "be",       "because",
    "been",       "before",    "being",    "below",    "between",
    "both",       "but",       "by",       "can",      "could",
    "did",        "do",        "does",     "doing",    "down",
    "due",        "during",    "each",     "eg",       "either",
    "et",         "etc",       "few",      "for",      "from",
    "further",    "had",       "has",      "have",     "having",
    "he",         "her",       "here",     "hers",     "herself",
    "him",        "himself",   "his",      "how",      "however",
    "i",          "ie",        "if",       "in",       "into",
    "is",         "it",        "its",      "itself",   "just",
    "may",        "me",        "might",    "more",     "most",
    "much",       "must",      "my",       "myself",   "neither",
    "no",         "nor",       "not",      "now",      "of",
    "off",        "often",     "on",       "once",     "only",
    "onto",       "or",        "other",    "others",   "otherwise",
    "our",        "ours",      "ourselves", "out",     "over",
    "own",        "per",       "rather",   "s",        "same",
    "shall",      "she",       "should",   "since",    "so",
    "some",       "such",      "t",        "than",     "that",
    "the",        "their",     "theirs",   "them",     "themselves",
    "then",       "there",     "thereby",  "therefore", "these",
    "they",       "this",      "those",    "though",   "through",
    "throughout", "thus",      "to",       "too",      "toward",
    "towards",    "under",     "unless",   "until",    "up",
    "upon",       "us",        "very",     "via",      "was",
    "we",         "were",      "what",     "whatever", "when",
    "where",      "whereas",   "whether",  "which",    "while",
    "who",        "whom",      "whose",    "why",      "will",
    "with",       "within",    "without",  "would",    "yet",
    "you",        "your",      "yours",    "yourself", "yourselves",
    "ve",         "ll"};

constexpr std::string_view kProtectedList[] = {
    "al.",    "approx.", "ca.",   "cf.",   "dr.",   "e.g.",
    "eq.",    "eqs.",    "fig.",  "figs.", "i.e.",  "inc.",
    "jr.",    "ltd.",    "mr.",   "mrs.",  "ms.",   "no.",
    "nos.",   "prof.",   "ref.",  "refs.", "resp.", "sp.",
    "spp.",   "st.",     "subsp.", "tab.", "var.",  "vs."};

std::vector<std::string_view> sorted_unique(std::span<const std::string_view> words) {
  std::vector<std::string_view> out(words.begin(), words.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<std::string_view>& stopword_table() {
  static const auto table = sorted_unique(kStopwordList);
  return table;
}

const std::vector<std::string_view>& protected_table() {
  static const auto table = sorted_unique(kProtectedList);
  return table;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_protected_word(std::string_view word) {
  while (!word.empty() && (word.front() == '(' || word.front() == '[' ||
                           word.front() == '"' || word.front() == '\'')) {
    word.remove_prefix(1);
  }
  if (word.size() == 2 && is_upper(word[0]) && word[1] == '.') return true;
  std::string lower = ascii_lower(word);
  const auto& table = protected_table();
  return std::binary_search(table.begin(), table.end(), lower);
}

}  // namespace

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string normalize_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (!is_word_byte(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < n) {
      if (is_word_byte(text[i])) {
        ++i;
      } else if (text[i] == '-' && i + 1 < n && is_word_byte(text[i + 1])) {
        ++i;
      } else {
        break;
      }
    }
    tokens.push_back({ascii_lower(text.substr(start, i - start)), start, i});
  }
  return tokens;
}

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  auto emit = [&](std::size_t from, std::size_t to) {
    while (from < to && is_space(text[from])) ++from;
    while (to > from && is_space(text[to - 1])) --to;
    if (to > from) sentences.emplace_back(text.substr(from, to - from));
  };

  const std::size_t n = text.size();
  std::size_t sentence_start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 >= n || !is_space(text[i + 1])) continue;
    std::size_t next = i + 1;
    while (next < n && is_space(text[next])) ++next;
    if (next >= n || !(is_upper(text[next]) || is_digit(text[next]))) continue;
    if (c == '.') {
      std::size_t word_start = i;
      while (word_start > sentence_start && !is_space(text[word_start - 1])) {
        --word_start;
      }
      if (is_protected_word(text.substr(word_start, i + 1 - word_start))) {
        continue;
      }
    }
    emit(sentence_start, i + 1);
    sentence_start = i + 1;
  }
  emit(sentence_start, n);
  return sentences;
}

std::span<const std::string_view> protected_abbreviations() {
  return protected_table();
}

std::span<const std::string_view> stopwords() { return stopword_table(); }

bool is_stopword(std::string_view lowercase_word) {
  const auto& table = stopword_table();
  return std::binary_search(table.begin(), table.end(), lowercase_word);
}

std::optional<std::string> normalize_term(std::string_view surface) {
  if (surface.empty() || is_stopword(surface)) return std::nullopt;
  std::string stem(surface);
  // Each round either shortens the stem or rewrites a final y/i in place,
  // so this settles within a few rounds.
  for (int round = 0; round < 16; ++round) {
    std::string next = porter_stem(stem);
    while (!next.empty() && next.back() == '-') next.pop_back();
    if (next == stem) break;
    stem = std::move(next);
  }
  if (stem.empty() || is_stopword(stem)) return std::nullopt;
  return stem;
}

KeywordSet keywords_of(std::span<const Token> tokens) {
  KeywordSet out;
  for (const Token& t : tokens) {
    if (auto stem = normalize_term(t.surface)) out.insert(Keyword{*stem});
  }
  return out;
}

KeywordSet extract_keywords(std::string_view text) {
  auto tokens = tokenize(text);
  return keywords_of(tokens);
}

}  // namespace condensedly
