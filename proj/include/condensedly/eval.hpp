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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "condensedly/corpus.hpp"
#include "condensedly/document.hpp"
#include "condensedly/ranking.hpp"

namespace condensedly::eval {

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 5;

struct ImportanceLabel {
  std::string doc_id;
  std::string paragraph_id;
  int level = kMinLevel;

  friend bool operator==(const ImportanceLabel&, const ImportanceLabel&) = default;
};

struct CorrelationReport {
  // Indexed by level - 1; empty for levels without labels.
  std::array<std::optional<double>, kMaxLevel> level_means;
  std::array<std::size_t, kMaxLevel> level_counts{};
  double spearman_rho = 0.0;
  // Set when either variable has zero variance; rho is then 0.
  bool degenerate = false;
  std::size_t n_paragraphs = 0;
};

class EvalError : public std::runtime_error {
 public:
  enum class Kind { kEmptyReference, kInvalidN, kUnknownParagraph, kEmptyLabels, kBadLabels };

  EvalError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Lowercased word tokens, no stemming and no stopword removal.
std::vector<std::string> rouge_tokens(std::string_view text);

// Clipped n-gram overlap. Throws kInvalidN for n < 1 and kEmptyReference
// when the reference has fewer than n tokens. A candidate shorter than n
// scores zero.
RougeScore rouge_n(std::string_view candidate, std::string_view reference, int n);

// Candidate is the rendered paragraphs in order; reference defaults to
// the abstract. Both are joined with single spaces.
RougeScore rouge_condensed_vs_abstract(const Document& doc, const ranking::CondensedText& ct);
RougeScore rouge_condensed(const Document& doc, const ranking::CondensedText& ct,
                           std::string_view reference, int n = 1);

// Rows of doc_id, paragraph_id, level separated by tabs. Blank lines and
// '#' comments are skipped, as is a leading "doc_id" header row. Throws
// kBadLabels on malformed rows, out-of-range levels or repeated pairs.
std::vector<ImportanceLabel> parse_labels_tsv(std::string_view tsv);
std::string labels_to_tsv(std::span<const ImportanceLabel> labels);

// Fractional ranks starting at 1; ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);
// Pearson correlation of the average ranks. Returns nullopt when either
// side has zero variance.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Paragraph IO is the maximum io_ratio over the document's abstract
// sentences.
double paragraph_io(const Document& doc, const Paragraph& p);
// `corpus` must be sorted by doc_id.
CorrelationReport io_by_level(std::span<const ImportanceLabel> labels,
                              std::span<const Document> corpus);

Json rouge_to_json(const RougeScore& score);
Json report_to_json(const CorrelationReport& report);

}  // namespace condensedly::eval
