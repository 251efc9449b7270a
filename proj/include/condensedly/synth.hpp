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

// Seeded generators for test fixtures. Output depends only on the seed:
// the engine is mt19937_64 and values are drawn by modulo reduction, so
// no implementation-defined distribution is involved.

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "condensedly/document.hpp"
#include "condensedly/eval.hpp"

namespace condensedly::synth {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform-ish integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }
  // Inclusive range.
  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// Distinct letter-only words that are their own keyword, so a word in
// the text and its keyword stem coincide.
std::vector<std::string> pseudo_words(Rng& rng, std::size_t count);

struct RandomDocOptions {
  int max_sentences = 5;
  int max_sections = 4;
  int max_paragraphs = 4;  // per section
  int max_words = 12;      // per sentence or paragraph
  std::size_t vocabulary = 30;
};

// A small document over a narrow vocabulary mixed with stopwords, so
// keyword overlaps, ties and empty keyword sets are all common.
Document random_document(Rng& rng, const std::string& doc_id,
                         const RandomDocOptions& options = {});
Document random_document(Rng& rng, const std::string& doc_id, std::span<const std::string> vocab,
                         const RandomDocOptions& options = {});
// Documents over one shared vocabulary, with PMID-like ids "100000",
// "100001", ...
std::vector<Document> random_corpus(Rng& rng, std::size_t count,
                                    const RandomDocOptions& options = {});

struct LabeledCorpus {
  std::vector<Document> docs;  // sorted by doc_id
  std::vector<eval::ImportanceLabel> labels;
};

// Each abstract sentence carries five keywords of its own. A paragraph
// labeled level L repeats about L - 1 of one sentence's keywords (off by
// one now and then) amid filler words, so IO grows with level.
LabeledCorpus monotone_corpus(std::uint64_t seed, std::size_t doc_count = 40);

// Writes <out>/corpus/<doc>.json and <out>/labels.tsv.
void write_labeled_corpus(const LabeledCorpus& corpus, const std::filesystem::path& out);

}  // namespace condensedly::synth
