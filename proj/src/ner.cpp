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

#include "condensedly/ner.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

namespace condensedly::ner {
namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 8> kClassNames = {
    "Gene", "Chemical", "Disease", "Drug", "SNP", "Species", "MeSH", "Abbreviation"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool at_word_boundary(std::string_view text, std::size_t start, std::size_t end) {
  bool left = start == 0 || !is_word_byte(text[start - 1]);
  bool right = end >= text.size() || !is_word_byte(text[end]);
  return left && right;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool has_word_byte(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_word_byte(c); });
}

// Longest first, then leftmost, then by id; accepted spans never overlap.
std::vector<Entity> resolve_overlaps(std::vector<Entity> candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const Entity& a, const Entity& b) {
    std::size_t la = a.end - a.start;
    std::size_t lb = b.end - b.start;
    if (la != lb) return la > lb;
    if (a.start != b.start) return a.start < b.start;
    return a.normalized < b.normalized;
  });
  std::vector<Entity> accepted;
  for (Entity& c : candidates) {
    bool overlaps = std::any_of(accepted.begin(), accepted.end(), [&](const Entity& a) {
      return c.start < a.end && a.start < c.end;
    });
    if (!overlaps) accepted.push_back(std::move(c));
  }
  return accepted;
}

void sort_entities(std::vector<Entity>& entities) {
  std::sort(entities.begin(), entities.end(), [](const Entity& a, const Entity& b) {
    return std::tie(a.start, a.end, a.cls, a.normalized) <
           std::tie(b.start, b.end, b.cls, b.normalized);
  });
}

// --- Schwartz-Hearst ---------------------------------------------------

std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    bool space = c == ' ' || c == '\t' || c == '\n';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

bool valid_short_form(std::string_view sf) {
  if (sf.size() < 2 || sf.size() > 10) return false;
  if (!is_word_byte(sf.front())) return false;
  bool has_letter = std::any_of(sf.begin(), sf.end(), [](char c) {
    return is_word_byte(c) && !is_digit(c);
  });
  return has_letter && word_count(sf) <= 2;
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Right-to-left character alignment of the short form against the
// candidate long form. Returns the offset where the long form starts.
std::optional<std::size_t> best_long_form(std::string_view sf, std::string_view lf) {
  long s = static_cast<long>(sf.size()) - 1;
  long l = static_cast<long>(lf.size()) - 1;
  while (s >= 0) {
    char c = lower(sf[static_cast<std::size_t>(s)]);
    if (!is_word_byte(c)) {
      --s;
      continue;
    }
    while ((l >= 0 && lower(lf[static_cast<std::size_t>(l)]) != c) ||
           (s == 0 && l > 0 && is_word_byte(lf[static_cast<std::size_t>(l - 1)]))) {
      --l;
    }
    if (l < 0) return std::nullopt;
    --l;
    --s;
  }
  std::size_t start = 0;
  if (l >= 0) {
    std::size_t space = lf.rfind(' ', static_cast<std::size_t>(l));
    start = space == std::string_view::npos ? 0 : space + 1;
  }
  return start;
}

bool is_clause_break(std::string_view text, std::size_t i) {
  char c = text[i];
  if (c == '(' || c == ')' || c == '[' || c == ']' || c == ';' || c == ':') return true;
  if (c == '.' || c == '!' || c == '?') {
    return i + 1 < text.size() && (text[i + 1] == ' ' || text[i + 1] == '\n');
  }
  return false;
}

}  // namespace

std::string_view class_name(EntityClass c) {
  return kClassNames[static_cast<std::size_t>(c)];
}

std::optional<EntityClass> parse_class(std::string_view name) {
  std::string lowered = ascii_lower(name);
  for (EntityClass c : kAllClasses) {
    if (ascii_lower(class_name(c)) == lowered) return c;
  }
  return std::nullopt;
}

bool is_lexicon_class(EntityClass c) {
  return c != EntityClass::kSnp && c != EntityClass::kAbbreviation;
}

void validate(const Lexicon& lexicon) {
  if (!is_lexicon_class(lexicon.cls)) {
    throw LexiconError(std::string(class_name(lexicon.cls)) +
                       " is recognized by rule and cannot have a lexicon");
  }
  for (const auto& [id, synonyms] : lexicon.entries) {
    if (id.empty()) throw LexiconError("lexicon entry with empty id");
    if (synonyms.empty()) throw LexiconError("lexicon entry '" + id + "' has no synonyms");
    for (const std::string& syn : synonyms) {
      if (!has_word_byte(syn)) {
        throw LexiconError("synonym '" + syn + "' of '" + id + "' is punctuation only");
      }
      if (is_stopword(ascii_lower(syn))) {
        throw LexiconError("synonym '" + syn + "' of '" + id + "' is a stopword");
      }
    }
  }
}

std::vector<Lexicon> parse_lexicon_tsv(std::string_view tsv, std::string_view source) {
  std::map<EntityClass, Lexicon> by_class;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    std::size_t nl = tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || line.front() == '#') continue;

    auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
      throw LexiconError(where() + "expected 3 tab-separated columns");
    }
    auto cls = parse_class(trim(line.substr(0, t1)));
    if (!cls) throw LexiconError(where() + "unknown entity class");
    std::string id(trim(line.substr(t1 + 1, t2 - t1 - 1)));
    std::string synonym(trim(line.substr(t2 + 1)));
    if (synonym.empty()) throw LexiconError(where() + "empty synonym");

    Lexicon& lex = by_class[*cls];
    lex.cls = *cls;
    lex.entries[id].push_back(std::move(synonym));
  }

  std::vector<Lexicon> out;
  for (auto& [cls, lex] : by_class) {
    for (auto& [id, synonyms] : lex.entries) {
      std::sort(synonyms.begin(), synonyms.end());
      synonyms.erase(std::unique(synonyms.begin(), synonyms.end()), synonyms.end());
    }
    try {
      validate(lex);
    } catch (const LexiconError& e) {
      throw LexiconError(std::string(source) + ": " + e.what());
    }
    out.push_back(std::move(lex));
  }
  return out;
}

std::vector<Lexicon> load_lexicons(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw LexiconError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::map<EntityClass, Lexicon> merged;
  for (const fs::path& f : files) {
    std::string bytes;
    try {
      bytes = read_file(f);
    } catch (const DocumentError& e) {
      throw LexiconError(e.what());
    }
    for (Lexicon& lex : parse_lexicon_tsv(bytes, f.string())) {
      Lexicon& target = merged[lex.cls];
      target.cls = lex.cls;
      for (auto& [id, synonyms] : lex.entries) {
        auto& dst = target.entries[id];
        dst.insert(dst.end(), synonyms.begin(), synonyms.end());
        std::sort(dst.begin(), dst.end());
        dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
      }
    }
  }
  std::vector<Lexicon> out;
  for (auto& [cls, lex] : merged) out.push_back(std::move(lex));
  return out;
}

LexiconMatcher::LexiconMatcher(std::span<const Lexicon> lexicons) {
  for (const Lexicon& lex : lexicons) {
    validate(lex);
    for (const auto& [id, synonyms] : lex.entries) {
      for (const std::string& syn : synonyms) {
        patterns_.push_back({lex.cls, id, syn, syn.size() <= 3});
      }
    }
  }
  // Canonical order so the result never depends on lexicon order.
  std::sort(patterns_.begin(), patterns_.end(), [](const Pattern& a, const Pattern& b) {
    return std::tie(a.cls, a.id, a.synonym) < std::tie(b.cls, b.id, b.synonym);
  });
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end(),
                              [](const Pattern& a, const Pattern& b) {
                                return a.cls == b.cls && a.id == b.id && a.synonym == b.synonym;
                              }),
                  patterns_.end());
  std::vector<std::string> keys;
  keys.reserve(patterns_.size());
  for (const Pattern& p : patterns_) keys.push_back(ascii_lower(p.synonym));
  automaton_ = AhoCorasick(keys);
}

std::vector<Entity> LexiconMatcher::match(std::string_view text) const {
  if (patterns_.empty() || text.empty()) return {};
  std::string folded = ascii_lower(text);
  std::map<EntityClass, std::vector<Entity>> candidates;
  automaton_.for_each_match(folded, [&](std::size_t id, std::size_t end) {
    const Pattern& p = patterns_[id];
    std::size_t start = end - automaton_.pattern_length(id);
    if (!at_word_boundary(text, start, end)) return;
    std::string_view surface = text.substr(start, end - start);
    if (p.case_sensitive && surface != p.synonym) return;
    candidates[p.cls].push_back({p.cls, std::string(surface), start, end, p.id});
  });

  std::vector<Entity> out;
  for (auto& [cls, list] : candidates) {
    for (Entity& e : resolve_overlaps(std::move(list))) out.push_back(std::move(e));
  }
  sort_entities(out);
  return out;
}

std::vector<Entity> match_lexicon(std::string_view text, std::span<const Lexicon> lexicons) {
  return LexiconMatcher(lexicons).match(text);
}

std::vector<Entity> find_snps(std::string_view text) {
  std::vector<Entity> out;
  for (std::size_t i = 0; i + 2 < text.size(); ++i) {
    if (text[i] != 'r' || text[i + 1] != 's') continue;
    if (i > 0 && is_word_byte(text[i - 1])) continue;
    if (text[i + 2] < '1' || text[i + 2] > '9') continue;
    std::size_t end = i + 3;
    while (end < text.size() && is_digit(text[end])) ++end;
    if (end < text.size() && is_word_byte(text[end])) continue;
    out.push_back({EntityClass::kSnp, std::string(text.substr(i, end - i)), i, end,
                   std::nullopt});
    i = end - 1;
  }
  return out;
}

std::vector<AbbreviationPair> find_abbreviations(std::string_view text) {
  std::vector<AbbreviationPair> out;
  for (std::size_t open = 0; open < text.size(); ++open) {
    if (text[open] != '(') continue;
    std::size_t close = text.find_first_of("()", open + 1);
    if (close == std::string_view::npos || text[close] != ')') continue;

    // Short form: the parenthesized text up to the first ',' or ';'.
    std::size_t sf_start = open + 1;
    std::size_t sf_end = close;
    std::size_t cut = text.substr(sf_start, sf_end - sf_start).find_first_of(",;");
    if (cut != std::string_view::npos) sf_end = sf_start + cut;
    while (sf_start < sf_end && text[sf_start] == ' ') ++sf_start;
    while (sf_end > sf_start && text[sf_end - 1] == ' ') --sf_end;
    std::string_view sf = text.substr(sf_start, sf_end - sf_start);
    if (!valid_short_form(sf)) continue;

    // Long form window: the preceding clause, at most
    // min(|SF| + 5, 2|SF|) words.
    std::size_t region_end = open;
    while (region_end > 0 && text[region_end - 1] == ' ') --region_end;
    std::size_t region_start = region_end;
    while (region_start > 0 && !is_clause_break(text, region_start - 1)) --region_start;
    while (region_start < region_end && text[region_start] == ' ') ++region_start;
    if (region_start >= region_end) continue;

    const std::size_t max_words = std::min(sf.size() + 5, sf.size() * 2);
    std::size_t window_start = region_end;
    std::size_t words = 0;
    while (window_start > region_start && words < max_words) {
      std::size_t w = window_start;
      while (w > region_start && text[w - 1] == ' ') --w;
      if (w == region_start) break;
      while (w > region_start && text[w - 1] != ' ') --w;
      window_start = w;
      ++words;
    }
    std::string_view window = text.substr(window_start, region_end - window_start);

    auto offset = best_long_form(sf, window);
    if (!offset) continue;
    std::string_view lf = window.substr(*offset);
    if (lf.size() <= sf.size()) continue;
    if (word_count(lf) > max_words) continue;
    // The short form must not appear as a word of its own definition.
    bool self_reference = false;
    for (std::size_t p = lf.find(sf); p != std::string_view::npos; p = lf.find(sf, p + 1)) {
      if (at_word_boundary(lf, p, p + sf.size())) self_reference = true;
    }
    if (self_reference) continue;

    std::size_t lf_start = window_start + *offset;
    out.push_back({std::string(sf), std::string(lf), {sf_start, sf_end},
                   {lf_start, lf_start + lf.size()}});
  }
  return out;
}

std::vector<Entity> annotate_text(std::string_view text, const LexiconMatcher& matcher) {
  std::vector<Entity> out = matcher.match(text);
  for (Entity& e : find_snps(text)) out.push_back(std::move(e));
  for (const AbbreviationPair& pair : find_abbreviations(text)) {
    out.push_back({EntityClass::kAbbreviation, pair.short_form, pair.short_span.start,
                   pair.short_span.end, std::nullopt});
  }
  sort_entities(out);
  return out;
}

DocumentAnnotations annotate(const Document& doc, const LexiconMatcher& matcher) {
  DocumentAnnotations out;
  for (const AbstractSentence& s : doc.abstract_sentences) {
    out.abstract.push_back(annotate_text(s.text, matcher));
  }
  for (const Section& sec : doc.sections) {
    auto& paragraphs = out.sections.emplace_back();
    for (const Paragraph& p : sec.paragraphs) {
      paragraphs.push_back(annotate_text(p.text, matcher));
    }
  }
  return out;
}

std::vector<EntityCount> entity_frequencies(const DocumentAnnotations& annotations) {
  std::map<std::pair<EntityClass, std::string>, std::size_t> counts;
  auto add = [&](const std::vector<Entity>& unit) {
    for (const Entity& e : unit) ++counts[{e.cls, e.normalized.value_or(e.surface)}];
  };
  for (const auto& unit : annotations.abstract) add(unit);
  for (const auto& section : annotations.sections) {
    for (const auto& unit : section) add(unit);
  }

  std::vector<EntityCount> out;
  for (const auto& [key, n] : counts) out.push_back({key.first, key.second, n});
  std::sort(out.begin(), out.end(), [](const EntityCount& a, const EntityCount& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.key != b.key) return a.key < b.key;
    return a.cls < b.cls;
  });
  return out;
}

Json entity_to_json(const Entity& e) {
  return {{"class", class_name(e.cls)},
          {"end", e.end},
          {"normalized", e.normalized ? Json(*e.normalized) : Json(nullptr)},
          {"start", e.start},
          {"surface", e.surface}};
}

Json entities_to_json(std::span<const Entity> entities) {
  Json arr = Json::array();
  for (const Entity& e : entities) arr.push_back(entity_to_json(e));
  return arr;
}

Json frequencies_to_json(std::span<const EntityCount> counts) {
  Json arr = Json::array();
  for (const EntityCount& c : counts) {
    arr.push_back({{"class", class_name(c.cls)}, {"count", c.count}, {"key", c.key}});
  }
  return arr;
}

}  // namespace condensedly::ner
