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

#include "condensedly/synth.hpp"

#include <algorithm>
#include <set>

#include "condensedly/corpus.hpp"
#include "condensedly/text.hpp"

namespace condensedly::synth {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kOnsets = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::string_view kFillerStopwords[] = {"the", "of", "and", "in", "with", "a", "to", "was"};

std::string sentence_case(std::vector<std::string> words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  if (!out.empty()) out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out + ".";
}

std::string id_for(std::size_t i) { return std::to_string(100000 + i); }

}  // namespace

std::vector<std::string> pseudo_words(Rng& rng, std::size_t count) {
  std::vector<std::string> words;
  std::set<std::string> seen;
  while (words.size() < count) {
    std::string w;
    const int syllables = rng.between(2, 3);
    for (int s = 0; s < syllables; ++s) {
      w += kOnsets[rng.index(kOnsets.size())];
      w += kVowels[rng.index(kVowels.size())];
    }
    if (rng.chance(1, 2)) w += kOnsets[rng.index(kOnsets.size())];
    auto stem = normalize_term(w);
    if (stem && *stem == w && seen.insert(w).second) words.push_back(std::move(w));
  }
  return words;
}

Document random_document(Rng& rng, const std::string& doc_id, const RandomDocOptions& options) {
  const auto vocab = pseudo_words(rng, options.vocabulary);
  return random_document(rng, doc_id, vocab, options);
}

Document random_document(Rng& rng, const std::string& doc_id, std::span<const std::string> vocab,
                         const RandomDocOptions& options) {
  auto random_text = [&]() {
    std::vector<std::string> words;
    const int n = rng.between(1, options.max_words);
    for (int i = 0; i < n; ++i) {
      if (rng.chance(1, 4)) {
        words.emplace_back(kFillerStopwords[rng.index(std::size(kFillerStopwords))]);
      } else {
        words.push_back(vocab[rng.index(vocab.size())]);
      }
    }
    return sentence_case(std::move(words));
  };

  DocumentBuilder builder(doc_id);
  builder.title(random_text());
  const int sentences = rng.between(1, options.max_sentences);
  for (int i = 0; i < sentences; ++i) builder.abstract_sentence(random_text());
  const int sections = rng.between(1, options.max_sections);
  for (int s = 0; s < sections; ++s) {
    builder.section("Section " + std::to_string(s + 1));
    const int paragraphs = rng.between(1, options.max_paragraphs);
    for (int p = 0; p < paragraphs; ++p) builder.paragraph(random_text());
  }
  return std::move(builder).build();
}

std::vector<Document> random_corpus(Rng& rng, std::size_t count, const RandomDocOptions& options) {
  const auto vocab = pseudo_words(rng, options.vocabulary);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < count; ++i) {
    docs.push_back(random_document(rng, id_for(i), vocab, options));
  }
  return docs;
}

LabeledCorpus monotone_corpus(std::uint64_t seed, std::size_t doc_count) {
  constexpr int kSentences = 3;
  constexpr int kKeywordsPerSentence = 5;
  constexpr int kParagraphsPerLevel = 2;
  constexpr int kSections = 3;

  Rng rng(seed);
  LabeledCorpus out;
  for (std::size_t d = 0; d < doc_count; ++d) {
    // Keywords of the abstract and filler for the body never overlap.
    auto words = pseudo_words(rng, kSentences * kKeywordsPerSentence + 20);
    std::vector<std::vector<std::string>> sentence_words;
    for (int s = 0; s < kSentences; ++s) {
      sentence_words.emplace_back(words.begin() + s * kKeywordsPerSentence,
                                  words.begin() + (s + 1) * kKeywordsPerSentence);
    }
    const std::vector<std::string> filler(words.begin() + kSentences * kKeywordsPerSentence,
                                          words.end());

    struct Planned {
      int level;
      std::string text;
    };
    std::vector<Planned> planned;
    for (int level = eval::kMinLevel; level <= eval::kMaxLevel; ++level) {
      for (int k = 0; k < kParagraphsPerLevel; ++k) {
        int shared = level - 1;
        if (rng.chance(1, 5)) shared += rng.chance(1, 2) ? 1 : -1;
        shared = std::clamp(shared, 0, kKeywordsPerSentence);
        std::vector<std::string> pick = sentence_words[rng.index(kSentences)];
        rng.shuffle(pick);
        pick.resize(static_cast<std::size_t>(shared));
        const int filler_count = rng.between(4, 8);
        for (int f = 0; f < filler_count; ++f) pick.push_back(filler[rng.index(filler.size())]);
        rng.shuffle(pick);
        planned.push_back({level, sentence_case(std::move(pick))});
      }
    }
    rng.shuffle(planned);

    const std::string doc_id = id_for(d);
    DocumentBuilder builder(doc_id);
    builder.title("Synthetic article " + std::to_string(d));
    for (const auto& sw : sentence_words) {
      std::vector<std::string> sentence = {"the"};
      sentence.insert(sentence.end(), sw.begin(), sw.end());
      builder.abstract_sentence(sentence_case(std::move(sentence)));
    }
    const std::size_t per_section = (planned.size() + kSections - 1) / kSections;
    std::vector<int> levels;
    for (std::size_t i = 0; i < planned.size(); ++i) {
      if (i % per_section == 0) builder.section("Part " + std::to_string(i / per_section + 1));
      builder.paragraph(planned[i].text);
      levels.push_back(planned[i].level);
    }
    Document doc = std::move(builder).build();

    std::size_t i = 0;
    for (const Section& s : doc.sections) {
      for (const Paragraph& p : s.paragraphs) {
        out.labels.push_back({doc.doc_id, p.paragraph_id, levels[i++]});
      }
    }
    out.docs.push_back(std::move(doc));
  }
  return out;
}

void write_labeled_corpus(const LabeledCorpus& corpus, const fs::path& out) {
  const fs::path dir = out / "corpus";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DocumentError(DocumentError::Kind::kIo, "cannot create " + dir.string());
  for (const Document& doc : corpus.docs) save_document(doc, dir);
  write_file(out / "labels.tsv", eval::labels_to_tsv(corpus.labels));
}

}  // namespace condensedly::synth
