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

#include "condensedly/document.hpp"

#include <charconv>
#include <utility>

namespace condensedly {

std::size_t Document::paragraph_count() const {
  std::size_t n = 0;
  for (const Section& s : sections) n += s.paragraphs.size();
  return n;
}

const Paragraph* Document::find_paragraph(std::string_view paragraph_id) const {
  auto colon = paragraph_id.find(':');
  if (colon == std::string_view::npos) return nullptr;
  std::size_t si = 0;
  std::size_t pi = 0;
  auto parse = [](std::string_view s, std::size_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  };
  if (!parse(paragraph_id.substr(0, colon), si) ||
      !parse(paragraph_id.substr(colon + 1), pi)) {
    return nullptr;
  }
  if (si >= sections.size() || pi >= sections[si].paragraphs.size()) {
    return nullptr;
  }
  return &sections[si].paragraphs[pi];
}

DocumentBuilder::DocumentBuilder(std::string doc_id) {
  doc_.doc_id = std::move(doc_id);
}

DocumentBuilder& DocumentBuilder::title(std::string_view title) {
  doc_.title = normalize_whitespace(title);
  return *this;
}

DocumentBuilder& DocumentBuilder::abstract_text(std::string_view text) {
  for (std::string& s : segment_sentences(normalize_whitespace(text))) {
    abstract_sentence(s);
  }
  return *this;
}

DocumentBuilder& DocumentBuilder::abstract_sentence(std::string_view sentence) {
  std::string text = normalize_whitespace(sentence);
  if (text.empty()) return *this;
  AbstractSentence s;
  s.index = doc_.abstract_sentences.size();
  s.keywords = extract_keywords(text);
  s.text = std::move(text);
  doc_.abstract_sentences.push_back(std::move(s));
  return *this;
}

DocumentBuilder& DocumentBuilder::section(std::string_view title) {
  Section s;
  s.title = normalize_whitespace(title);
  doc_.sections.push_back(std::move(s));
  return *this;
}

DocumentBuilder& DocumentBuilder::paragraph(std::string_view text) {
  std::string normalized = normalize_whitespace(text);
  if (normalized.empty()) return *this;
  if (doc_.sections.empty()) section("");
  Paragraph p;
  p.tokens = tokenize(normalized);
  p.keywords = keywords_of(p.tokens);
  p.text = std::move(normalized);
  doc_.sections.back().paragraphs.push_back(std::move(p));
  return *this;
}

Document DocumentBuilder::build() && {
  if (doc_.doc_id.empty()) {
    throw DocumentError(DocumentError::Kind::kInvalid, "document has no id");
  }
  std::erase_if(doc_.sections,
                [](const Section& s) { return s.paragraphs.empty(); });
  for (std::size_t si = 0; si < doc_.sections.size(); ++si) {
    Section& s = doc_.sections[si];
    s.section_id = si;
    for (std::size_t pi = 0; pi < s.paragraphs.size(); ++pi) {
      Paragraph& p = s.paragraphs[pi];
      p.section_id = si;
      p.ordinal = pi;
      p.paragraph_id = std::to_string(si) + ":" + std::to_string(pi);
    }
  }
  if (doc_.abstract_sentences.empty()) {
    throw DocumentError(DocumentError::Kind::kMissingAbstract,
                        doc_.doc_id + ": abstract has no sentences");
  }
  if (doc_.sections.empty()) {
    throw DocumentError(DocumentError::Kind::kEmptyBody,
                        doc_.doc_id + ": body has no paragraphs");
  }
  return std::move(doc_);
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

bool is_blank(std::string_view line) {
  return normalize_whitespace(line).empty();
}

std::string_view header_text(std::string_view line, std::string_view marker) {
  if (line.substr(0, marker.size()) != marker) return {};
  return line.substr(marker.size());
}

}  // namespace

Document parse_plain_text(std::string_view text, std::string_view doc_id) {
  std::vector<std::vector<std::string_view>> blocks;
  std::vector<std::string_view> current;
  for (std::string_view line : split_lines(text)) {
    if (is_blank(line)) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(line);
    }
  }
  if (!current.empty()) blocks.push_back(std::move(current));

  DocumentBuilder builder{std::string(doc_id)};
  if (blocks.empty()) {
    throw DocumentError(DocumentError::Kind::kMissingAbstract,
                        std::string(doc_id) + ": empty text file");
  }

  auto join = [](std::span<const std::string_view> lines) {
    std::string out;
    for (std::string_view l : lines) {
      out.append(l);
      out.push_back(' ');
    }
    return out;
  };

  std::size_t next = 0;
  std::span<const std::string_view> abstract = blocks[next++];
  if (std::string_view t = header_text(abstract.front(), "# "); !t.empty()) {
    builder.title(t);
    abstract = abstract.subspan(1);
    // The title may stand alone in its own block.
    if (abstract.empty() && next < blocks.size()) abstract = blocks[next++];
  }
  builder.abstract_text(join(abstract));

  std::string pending_title;
  for (std::size_t b = next; b < blocks.size(); ++b) {
    std::span<const std::string_view> lines = blocks[b];
    std::string title = std::move(pending_title);
    pending_title.clear();
    if (std::string_view t = header_text(lines.front(), "## "); !t.empty()) {
      title = std::string(t);
      lines = lines.subspan(1);
    }
    if (lines.empty()) {
      pending_title = std::move(title);
      continue;
    }
    builder.section(title).paragraph(join(lines));
  }
  return std::move(builder).build();
}

}  // namespace condensedly
