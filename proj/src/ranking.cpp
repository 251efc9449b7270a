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

#include "condensedly/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace condensedly::ranking {
namespace {

using TermCounts = std::unordered_map<std::string, std::size_t>;

TermCounts count_terms(const Paragraph& p) {
  TermCounts counts;
  for (const Token& t : p.tokens) {
    if (auto stem = normalize_term(t.surface)) ++counts[*stem];
  }
  return counts;
}

std::size_t sentence_frequency(const Keyword& k,
                               std::span<const AbstractSentence> abstract) {
  return static_cast<std::size_t>(
      std::count_if(abstract.begin(), abstract.end(),
                    [&](const AbstractSentence& s) { return s.keywords.contains(k); }));
}

double isr_value(std::size_t m, std::size_t sr) {
  return std::log(1.0 + static_cast<double>(m) / static_cast<double>(sr));
}

// Shared by pr_isr() and condense() so both produce bit-identical sums.
// Terms are visited in keyword order.
template <typename IsrLookup>
double pr_isr_sum(const AbstractSentence& qs, const TermCounts& counts,
                  std::size_t token_count, IsrLookup&& isr_of) {
  double sum = 0.0;
  for (const Keyword& k : qs.keywords) {
    auto it = counts.find(k.stem);
    if (it == counts.end()) continue;
    double pr = static_cast<double>(it->second) / static_cast<double>(token_count);
    sum += pr * isr_of(k);
  }
  return sum;
}

bool intersects(const KeywordSet& a, const KeywordSet& b) {
  const KeywordSet& small = a.size() <= b.size() ? a : b;
  const KeywordSet& large = a.size() <= b.size() ? b : a;
  return std::any_of(small.begin(), small.end(),
                     [&](const Keyword& k) { return large.contains(k); });
}

Json section_json(const SectionScore& s) {
  return {{"coverage", s.coverage}, {"rss", s.rss}, {"spread", s.spread}};
}

}  // namespace

const CondensedEntry* CondensedText::entry_for(std::size_t qs_index) const {
  for (const CondensedEntry& e : entries) {
    if (e.qs_index == qs_index) return &e;
  }
  return nullptr;
}

double io_ratio(const KeywordSet& query, const KeywordSet& paragraph) {
  if (query.empty()) return 0.0;
  std::size_t shared = static_cast<std::size_t>(std::count_if(
      query.begin(), query.end(),
      [&](const Keyword& k) { return paragraph.contains(k); }));
  return static_cast<double>(shared) / static_cast<double>(query.size());
}

double io_ratio(const AbstractSentence& qs, const Paragraph& p) {
  return io_ratio(qs.keywords, p.keywords);
}

double isr(const Keyword& keyword, std::span<const AbstractSentence> abstract) {
  std::size_t sr = sentence_frequency(keyword, abstract);
  if (sr == 0) {
    throw RankingError(RankingError::Kind::kKeywordNotInAbstract,
                       "keyword '" + keyword.stem + "' is not in the abstract");
  }
  return isr_value(abstract.size(), sr);
}

double pr_isr(const AbstractSentence& qs, const Paragraph& p,
              std::span<const AbstractSentence> abstract) {
  if (p.tokens.empty()) {
    throw RankingError(RankingError::Kind::kEmptyParagraph,
                       "paragraph " + p.paragraph_id + " has no tokens");
  }
  return pr_isr_sum(qs, count_terms(p), p.tokens.size(),
                    [&](const Keyword& k) { return isr(k, abstract); });
}

SectionScore rss(const AbstractSentence& qs, const Section& s) {
  if (s.paragraphs.empty()) {
    throw RankingError(RankingError::Kind::kEmptySection,
                       "section " + std::to_string(s.section_id) + " is empty");
  }
  SectionScore score;
  score.qs_index = qs.index;
  score.section_id = s.section_id;
  if (qs.keywords.empty()) return score;

  std::size_t covered = 0;
  for (const Keyword& k : qs.keywords) {
    bool found = std::any_of(s.paragraphs.begin(), s.paragraphs.end(),
                             [&](const Paragraph& p) { return p.keywords.contains(k); });
    if (found) ++covered;
  }
  std::size_t hit = static_cast<std::size_t>(
      std::count_if(s.paragraphs.begin(), s.paragraphs.end(),
                    [&](const Paragraph& p) { return intersects(qs.keywords, p.keywords); }));

  score.coverage = static_cast<double>(covered) / static_cast<double>(qs.keywords.size());
  score.spread = static_cast<double>(hit) / static_cast<double>(s.paragraphs.size());
  score.rss = score.coverage * score.spread;
  return score;
}

CondensedText condense(const Document& doc) {
  CondensedText ct;
  ct.doc_id = doc.doc_id;

  const auto& abstract = doc.abstract_sentences;
  std::map<Keyword, double> isr_table;
  for (const AbstractSentence& s : abstract) {
    for (const Keyword& k : s.keywords) {
      if (!isr_table.contains(k)) {
        isr_table.emplace(k, isr_value(abstract.size(), sentence_frequency(k, abstract)));
      }
    }
  }
  auto isr_of = [&](const Keyword& k) { return isr_table.at(k); };

  std::vector<std::vector<TermCounts>> counts(doc.sections.size());
  std::vector<std::vector<bool>> used(doc.sections.size());
  for (const Section& s : doc.sections) {
    // A punctuation-only paragraph has no counts and always scores 0.
    for (const Paragraph& p : s.paragraphs) counts[s.section_id].push_back(count_terms(p));
    used[s.section_id].assign(s.paragraphs.size(), false);
  }

  for (const AbstractSentence& qs : abstract) {
    if (qs.keywords.empty()) continue;

    std::vector<SectionScore> section_scores;
    for (const Section& s : doc.sections) section_scores.push_back(rss(qs, s));
    std::vector<std::size_t> order(doc.sections.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return section_scores[a].rss > section_scores[b].rss;
    });

    for (std::size_t si : order) {
      if (section_scores[si].rss <= 0.0) break;
      const Section& s = doc.sections[si];
      std::size_t best = s.paragraphs.size();
      double best_score = 0.0;
      for (std::size_t pi = 0; pi < s.paragraphs.size(); ++pi) {
        if (used[si][pi]) continue;
        double v = pr_isr_sum(qs, counts[si][pi], s.paragraphs[pi].tokens.size(), isr_of);
        if (best == s.paragraphs.size() || v > best_score) {
          best = pi;
          best_score = v;
        }
      }
      if (best == s.paragraphs.size() || best_score <= 0.0) continue;

      const Paragraph& p = s.paragraphs[best];
      used[si][best] = true;
      CondensedEntry entry;
      entry.qs_index = qs.index;
      entry.section_id = si;
      entry.paragraph_id = p.paragraph_id;
      entry.section = section_scores[si];
      entry.scores = {qs.index, p.paragraph_id, io_ratio(qs, p), best_score};
      ct.entries.push_back(std::move(entry));
      break;
    }
  }

  for (const Section& s : doc.sections) {
    for (const Paragraph& p : s.paragraphs) {
      if (used[s.section_id][p.ordinal]) ct.rendered_paragraph_ids.push_back(p.paragraph_id);
    }
  }
  return ct;
}

Json entry_to_json(const CondensedEntry& e) {
  return {{"paragraph_id", e.paragraph_id},
          {"qs_index", e.qs_index},
          {"rss", section_json(e.section)},
          {"scores", {{"io", e.scores.io}, {"pr_isr", e.scores.pr_isr}}},
          {"section_id", e.section_id}};
}

Json condensed_to_json(const CondensedText& ct) {
  Json entries = Json::array();
  for (const CondensedEntry& e : ct.entries) entries.push_back(entry_to_json(e));
  return {{"doc_id", ct.doc_id},
          {"entries", std::move(entries)},
          {"rendered_paragraph_ids", ct.rendered_paragraph_ids}};
}

}  // namespace condensedly::ranking
