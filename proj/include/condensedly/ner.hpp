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

// Bio-entity recognition over eight classes: six dictionary classes,
// rsID SNP mentions, and parenthesized abbreviation definitions.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "condensedly/aho_corasick.hpp"
#include "condensedly/corpus.hpp"
#include "condensedly/document.hpp"

namespace condensedly::ner {

enum class EntityClass {
  kGene,
  kChemical,
  kDisease,
  kDrug,
  kSnp,
  kSpecies,
  kMesh,
  kAbbreviation,
};

inline constexpr std::array<EntityClass, 8> kAllClasses = {
    EntityClass::kGene,    EntityClass::kChemical, EntityClass::kDisease,
    EntityClass::kDrug,    EntityClass::kSnp,      EntityClass::kSpecies,
    EntityClass::kMesh,    EntityClass::kAbbreviation};

std::string_view class_name(EntityClass c);
// Case-insensitive; accepts the names class_name() produces.
std::optional<EntityClass> parse_class(std::string_view name);
// SNP and Abbreviation come from rules, never from lexicons.
bool is_lexicon_class(EntityClass c);

struct Entity {
  EntityClass cls = EntityClass::kGene;
  std::string surface;
  std::size_t start = 0;
  std::size_t end = 0;
  std::optional<std::string> normalized;

  friend bool operator==(const Entity&, const Entity&) = default;
};

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct AbbreviationPair {
  std::string short_form;
  std::string long_form;
  Span short_span;
  Span long_span;
};

struct Lexicon {
  EntityClass cls = EntityClass::kGene;
  std::map<std::string, std::vector<std::string>> entries;  // id -> synonyms
};

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// TSV rows of (class, normalized_id, synonym). Blank lines and lines
// starting with '#' are ignored. Returns one validated Lexicon per class
// present, ordered by class.
std::vector<Lexicon> parse_lexicon_tsv(std::string_view tsv,
                                       std::string_view source = "<tsv>");
// Every *.tsv file in `dir`, merged per class.
std::vector<Lexicon> load_lexicons(const std::filesystem::path& dir);
// Throws LexiconError on rule/empty synonyms, stopwords or punctuation.
void validate(const Lexicon& lexicon);

// Compiled dictionary matcher over a set of lexicons. Synonyms of three
// bytes or fewer match case-sensitively, longer ones ignore ASCII case.
// Matches must sit on word boundaries. Within a class, overlapping
// candidates are resolved longest first, then leftmost.
class LexiconMatcher {
 public:
  LexiconMatcher() = default;
  explicit LexiconMatcher(std::span<const Lexicon> lexicons);

  std::vector<Entity> match(std::string_view text) const;
  std::size_t synonym_count() const { return patterns_.size(); }

 private:
  struct Pattern {
    EntityClass cls;
    std::string id;
    std::string synonym;
    bool case_sensitive;
  };

  std::vector<Pattern> patterns_;
  AhoCorasick automaton_;
};

std::vector<Entity> match_lexicon(std::string_view text,
                                  std::span<const Lexicon> lexicons);

// Word-bounded rs[1-9][0-9]* mentions.
std::vector<Entity> find_snps(std::string_view text);

// Schwartz-Hearst definitions of the form "long form (SF)".
std::vector<AbbreviationPair> find_abbreviations(std::string_view text);

// All entities of one text unit, ordered by (start, end, class).
std::vector<Entity> annotate_text(std::string_view text, const LexiconMatcher& matcher);

struct DocumentAnnotations {
  std::vector<std::vector<Entity>> abstract;                // per sentence
  std::vector<std::vector<std::vector<Entity>>> sections;  // [section][paragraph]
};

DocumentAnnotations annotate(const Document& doc, const LexiconMatcher& matcher);

struct EntityCount {
  EntityClass cls = EntityClass::kGene;
  std::string key;  // lexicon id when present, else the surface form
  std::size_t count = 0;

  friend bool operator==(const EntityCount&, const EntityCount&) = default;
};

// Counts per (class, key); sorted by count descending, then key, then class.
std::vector<EntityCount> entity_frequencies(const DocumentAnnotations& annotations);

Json entity_to_json(const Entity& e);
Json entities_to_json(std::span<const Entity> entities);
Json frequencies_to_json(std::span<const EntityCount> counts);

}  // namespace condensedly::ner
