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

#include "condensedly/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "condensedly/text.hpp"

namespace condensedly::eval {
namespace {

using NGram = std::vector<std::string>;

std::map<NGram, std::size_t> count_ngrams(const std::vector<std::string>& tokens, int n) {
  std::map<NGram, std::size_t> counts;
  const auto len = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + len <= tokens.size(); ++i) {
    ++counts[NGram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + len))];
  }
  return counts;
}

std::size_t total(const std::map<NGram, std::size_t>& counts) {
  std::size_t sum = 0;
  for (const auto& [gram, c] : counts) sum += c;
  return sum;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string join_texts(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

std::vector<std::string> rouge_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (Token& t : tokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference, int n) {
  if (n < 1) throw EvalError(EvalError::Kind::kInvalidN, "n must be at least 1");
  auto ref_counts = count_ngrams(rouge_tokens(reference), n);
  const std::size_t ref_total = total(ref_counts);
  if (ref_total == 0) {
    throw EvalError(EvalError::Kind::kEmptyReference,
                    "reference has fewer than " + std::to_string(n) + " tokens");
  }
  auto cand_counts = count_ngrams(rouge_tokens(candidate), n);
  const std::size_t cand_total = total(cand_counts);

  std::size_t overlap = 0;
  for (const auto& [gram, c] : cand_counts) {
    auto it = ref_counts.find(gram);
    if (it != ref_counts.end()) overlap += std::min(c, it->second);
  }
  RougeScore score;
  score.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
  score.precision =
      cand_total == 0 ? 0.0 : static_cast<double>(overlap) / static_cast<double>(cand_total);
  const double sum = score.recall + score.precision;
  score.f1 = sum == 0.0 ? 0.0 : 2.0 * score.recall * score.precision / sum;
  return score;
}

RougeScore rouge_condensed(const Document& doc, const ranking::CondensedText& ct,
                           std::string_view reference, int n) {
  if (ct.doc_id != doc.doc_id) {
    throw std::invalid_argument("condensed text of " + ct.doc_id + " does not belong to " +
                                doc.doc_id);
  }
  std::vector<std::string> parts;
  for (const std::string& id : ct.rendered_paragraph_ids) {
    const Paragraph* p = doc.find_paragraph(id);
    if (!p) throw std::invalid_argument("condensed paragraph " + id + " is not in " + doc.doc_id);
    parts.push_back(p->text);
  }
  return rouge_n(join_texts(parts), reference, n);
}

RougeScore rouge_condensed_vs_abstract(const Document& doc, const ranking::CondensedText& ct) {
  std::vector<std::string> sentences;
  for (const AbstractSentence& s : doc.abstract_sentences) sentences.push_back(s.text);
  return rouge_condensed(doc, ct, join_texts(sentences), 1);
}

std::vector<ImportanceLabel> parse_labels_tsv(std::string_view tsv) {
  std::vector<ImportanceLabel> labels;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t line_no = 0;
  bool first_row = true;
  while (!tsv.empty()) {
    std::size_t nl = tsv.find('\n');
    std::string_view line = trim(tsv.substr(0, nl));
    tsv.remove_prefix(nl == std::string_view::npos ? tsv.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    auto fields = split_tabs(line);
    const bool header = first_row && !fields.empty() && trim(fields[0]) == "doc_id";
    first_row = false;
    if (header) continue;

    auto fail = [&](const std::string& why) {
      return EvalError(EvalError::Kind::kBadLabels,
                       "labels line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 3) throw fail("expected 3 tab-separated fields");
    ImportanceLabel label;
    label.doc_id = std::string(trim(fields[0]));
    label.paragraph_id = std::string(trim(fields[1]));
    std::string_view level = trim(fields[2]);
    auto [ptr, ec] = std::from_chars(level.data(), level.data() + level.size(), label.level);
    if (label.doc_id.empty() || label.paragraph_id.empty()) throw fail("empty id");
    if (ec != std::errc() || ptr != level.data() + level.size()) throw fail("level is not an integer");
    if (label.level < kMinLevel || label.level > kMaxLevel) throw fail("level must be in 1..5");
    if (!seen.emplace(label.doc_id, label.paragraph_id).second) {
      throw fail("duplicate label for " + label.doc_id + " " + label.paragraph_id);
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::string labels_to_tsv(std::span<const ImportanceLabel> labels) {
  std::string out = "doc_id\tparagraph_id\tlevel\n";
  for (const ImportanceLabel& l : labels) {
    out += l.doc_id + '\t' + l.paragraph_id + '\t' + std::to_string(l.level) + '\n';
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share rank mean((i+1)..(j+1)).
    const double rank = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 2) return std::nullopt;
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;  // mean of average ranks is always this
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double paragraph_io(const Document& doc, const Paragraph& p) {
  double best = 0.0;
  for (const AbstractSentence& qs : doc.abstract_sentences) {
    best = std::max(best, ranking::io_ratio(qs, p));
  }
  return best;
}

CorrelationReport io_by_level(std::span<const ImportanceLabel> labels,
                              std::span<const Document> corpus) {
  if (labels.empty()) throw EvalError(EvalError::Kind::kEmptyLabels, "no importance labels");

  std::vector<double> levels;
  std::vector<double> ios;
  std::array<double, kMaxLevel> sums{};
  CorrelationReport report;
  for (const ImportanceLabel& label : labels) {
    auto it = std::lower_bound(corpus.begin(), corpus.end(), label.doc_id,
                               [](const Document& d, const std::string& id) { return d.doc_id < id; });
    const Paragraph* p = nullptr;
    if (it != corpus.end() && it->doc_id == label.doc_id) p = it->find_paragraph(label.paragraph_id);
    if (!p) {
      throw EvalError(EvalError::Kind::kUnknownParagraph,
                      "unknown paragraph " + label.doc_id + " " + label.paragraph_id);
    }
    if (label.level < kMinLevel || label.level > kMaxLevel) {
      throw EvalError(EvalError::Kind::kBadLabels, "level out of range for " + label.doc_id);
    }
    const double io = paragraph_io(*it, *p);
    const auto slot = static_cast<std::size_t>(label.level - kMinLevel);
    sums[slot] += io;
    ++report.level_counts[slot];
    levels.push_back(label.level);
    ios.push_back(io);
  }
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (report.level_counts[i] > 0) {
      report.level_means[i] = sums[i] / static_cast<double>(report.level_counts[i]);
    }
  }
  report.n_paragraphs = labels.size();
  auto rho = spearman(levels, ios);
  report.degenerate = !rho.has_value();
  report.spearman_rho = rho.value_or(0.0);
  return report;
}

Json rouge_to_json(const RougeScore& score) {
  return {{"f1", score.f1}, {"precision", score.precision}, {"recall", score.recall}};
}

Json report_to_json(const CorrelationReport& report) {
  Json means = Json::object();
  Json counts = Json::object();
  for (std::size_t i = 0; i < report.level_means.size(); ++i) {
    const std::string level = std::to_string(i + kMinLevel);
    if (report.level_means[i]) means[level] = *report.level_means[i];
    counts[level] = report.level_counts[i];
  }
  return {{"degenerate", report.degenerate},
          {"level_counts", std::move(counts)},
          {"level_means", std::move(means)},
          {"n_paragraphs", report.n_paragraphs},
          {"spearman_rho", report.spearman_rho}};
}

}  // namespace condensedly::eval
