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

// JATS ingestion. Only the element subset the condenser needs is
// interpreted: article-id, article-title, abstract/p and body/sec/title/p.
// Everything else is descended into, except floats, reference lists and
// labels (skipped) and math (replaced by a placeholder token).

#include <expat.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "condensedly/document.hpp"

namespace condensedly {
namespace {

constexpr std::string_view kMathPlaceholder = " [math] ";

bool is_skipped(std::string_view name) {
  return name == "fig" || name == "fig-group" || name == "table-wrap" ||
         name == "table-wrap-group" || name == "table" || name == "caption" ||
         name == "ref-list" || name == "label" || name == "back" ||
         name == "floats-group" || name == "supplementary-material" ||
         name == "graphic" || name == "media" || name == "fn-group";
}

bool is_math(std::string_view name) {
  return name == "disp-formula" || name == "inline-formula" ||
         name == "tex-math" || name == "math" || name == "mml:math";
}

// Elements that separate words when they occur inside a paragraph.
bool is_block(std::string_view name) {
  return name == "p" || name == "list" || name == "list-item" ||
         name == "disp-quote" || name == "def-list" || name == "def-item" ||
         name == "term" || name == "def" || name == "break";
}

struct FlatSection {
  std::optional<std::size_t> parent;
  std::string own_title;
  std::vector<std::string> paragraphs;
};

struct AbstractBlock {
  bool typed = false;  // carries an abstract-type attribute
  std::vector<std::string> paragraphs;
};

class JatsHandler {
 public:
  void Start(std::string_view name, const XML_Char** attrs) {
    if (depth_ == 0) root_ = std::string(name);
    ++depth_;
    stack_.emplace_back(name);

    if (skip_depth_ > 0) {
      ++skip_depth_;
      return;
    }
    if (is_skipped(name)) {
      skip_depth_ = 1;
      return;
    }
    if (is_math(name)) {
      Append(kMathPlaceholder);
      skip_depth_ = 1;
      return;
    }

    if (name == "article-id") {
      capture_pmid_ = Attr(attrs, "pub-id-type") == "pmid";
      if (capture_pmid_) pmid_.clear();
    } else if (name == "article-title" && !title_seen_ && Inside("title-group")) {
      capturing_title_ = true;
    } else if (name == "abstract" && !in_body_ && abstract_depth_ == 0) {
      abstract_depth_ = depth_;
      AbstractBlock block;
      block.typed = !Attr(attrs, "abstract-type").empty();
      abstracts_.push_back(std::move(block));
    } else if (name == "body" && abstract_depth_ == 0) {
      in_body_ = true;
      saw_body_ = true;
    } else if (name == "sec" && in_body_) {
      FlatSection s;
      if (!open_secs_.empty()) s.parent = open_secs_.back();
      open_secs_.push_back(sections_.size());
      sections_.push_back(std::move(s));
    } else if (name == "title" && in_body_ && Parent() == "sec" &&
               paragraph_depth_ == 0) {
      section_title_.emplace();
    }

    if (name == "p" && paragraph_depth_ == 0 && (in_body_ || abstract_depth_)) {
      paragraph_depth_ = depth_;
      paragraph_.clear();
    } else if (paragraph_depth_ > 0 && is_block(name)) {
      paragraph_.push_back(' ');
    }
  }

  void End(std::string_view name) {
    if (skip_depth_ > 0) {
      --skip_depth_;
    } else {
      if (name == "article-id") capture_pmid_ = false;
      if (name == "article-title" && capturing_title_) {
        capturing_title_ = false;
        title_seen_ = true;
      }
      if (name == "title" && section_title_ && !open_secs_.empty()) {
        sections_[open_secs_.back()].own_title = std::move(*section_title_);
        section_title_.reset();
      }
      if (paragraph_depth_ == depth_) {
        FinishParagraph();
      } else if (paragraph_depth_ > 0 && is_block(name)) {
        paragraph_.push_back(' ');
      }
      if (name == "sec" && in_body_ && !open_secs_.empty()) open_secs_.pop_back();
      if (name == "body" && in_body_) in_body_ = false;
      if (abstract_depth_ == depth_) abstract_depth_ = 0;
    }
    stack_.pop_back();
    --depth_;
  }

  void Text(std::string_view text) {
    if (skip_depth_ > 0) return;
    if (capture_pmid_) pmid_.append(text);
    if (capturing_title_) title_.append(text);
    if (section_title_) section_title_->append(text);
    if (paragraph_depth_ > 0) paragraph_.append(text);
  }

  Document Build(std::string_view fallback_id) {
    if (root_ != "article") {
      throw DocumentError(DocumentError::Kind::kMalformedXml,
                          "root element is <" + root_ + ">, expected <article>");
    }
    std::string id = normalize_whitespace(pmid_);
    if (id.empty()) id = std::string(fallback_id);
    if (id.empty()) {
      throw DocumentError(DocumentError::Kind::kInvalid,
                          "article has no PMID and no fallback id was given");
    }
    if (abstracts_.empty()) {
      throw DocumentError(DocumentError::Kind::kMissingAbstract,
                          id + ": no <abstract> element");
    }

    DocumentBuilder builder(id);
    builder.title(title_);

    const AbstractBlock* chosen = &abstracts_.front();
    for (const AbstractBlock& a : abstracts_) {
      if (!a.typed) {
        chosen = &a;
        break;
      }
    }
    for (const std::string& p : chosen->paragraphs) builder.abstract_text(p);

    if (!body_paragraphs_.empty()) {
      builder.section("");
      for (const std::string& p : body_paragraphs_) builder.paragraph(p);
    }
    for (const FlatSection& s : sections_) {
      builder.section(FullTitle(s));
      for (const std::string& p : s.paragraphs) builder.paragraph(p);
    }
    if (!saw_body_) {
      throw DocumentError(DocumentError::Kind::kEmptyBody, id + ": no <body>");
    }
    return std::move(builder).build();
  }

 private:
  static std::string_view Attr(const XML_Char** attrs, std::string_view key) {
    for (int i = 0; attrs[i]; i += 2) {
      if (key == attrs[i]) return attrs[i + 1];
    }
    return {};
  }

  std::string_view Parent() const {
    return stack_.size() >= 2 ? std::string_view(stack_[stack_.size() - 2])
                              : std::string_view();
  }

  bool Inside(std::string_view name) const {
    for (const std::string& s : stack_) {
      if (s == name) return true;
    }
    return false;
  }

  void Append(std::string_view text) {
    if (paragraph_depth_ > 0) paragraph_.append(text);
  }

  void FinishParagraph() {
    paragraph_depth_ = 0;
    if (abstract_depth_ > 0) {
      abstracts_.back().paragraphs.push_back(std::move(paragraph_));
    } else if (in_body_) {
      if (open_secs_.empty()) {
        body_paragraphs_.push_back(std::move(paragraph_));
      } else {
        sections_[open_secs_.back()].paragraphs.push_back(std::move(paragraph_));
      }
    }
    paragraph_.clear();
  }

  std::string FullTitle(const FlatSection& s) const {
    std::vector<std::string> parts;
    for (const FlatSection* cur = &s;;) {
      std::string t = normalize_whitespace(cur->own_title);
      if (!t.empty()) parts.push_back(std::move(t));
      if (!cur->parent) break;
      cur = &sections_[*cur->parent];
    }
    std::string out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      if (!out.empty()) out += " / ";
      out += *it;
    }
    return out;
  }

  int depth_ = 0;
  int skip_depth_ = 0;
  int abstract_depth_ = 0;
  int paragraph_depth_ = 0;
  bool in_body_ = false;
  bool saw_body_ = false;
  bool capture_pmid_ = false;
  bool capturing_title_ = false;
  bool title_seen_ = false;
  std::string root_;
  std::vector<std::string> stack_;
  std::string pmid_;
  std::string title_;
  std::optional<std::string> section_title_;
  std::string paragraph_;
  std::vector<AbstractBlock> abstracts_;
  std::vector<std::string> body_paragraphs_;
  std::vector<FlatSection> sections_;
  std::vector<std::size_t> open_secs_;
};

void XMLCALL OnStart(void* data, const XML_Char* name, const XML_Char** attrs) {
  static_cast<JatsHandler*>(data)->Start(name, attrs);
}

void XMLCALL OnEnd(void* data, const XML_Char* name) {
  static_cast<JatsHandler*>(data)->End(name);
}

void XMLCALL OnText(void* data, const XML_Char* text, int len) {
  static_cast<JatsHandler*>(data)->Text(
      std::string_view(text, static_cast<std::size_t>(len)));
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

Document parse_jats(std::string_view xml, std::string_view fallback_id) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(
      XML_ParserCreate("UTF-8"));
  if (!parser) throw std::bad_alloc();
  JatsHandler handler;
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), OnStart, OnEnd);
  XML_SetCharacterDataHandler(parser.get(), OnText);

  if (XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()),
                XML_TRUE) == XML_STATUS_ERROR) {
    std::string message = XML_ErrorString(XML_GetErrorCode(parser.get()));
    message += " at line " +
               std::to_string(XML_GetCurrentLineNumber(parser.get())) +
               ", column " +
               std::to_string(XML_GetCurrentColumnNumber(parser.get()));
    throw DocumentError(DocumentError::Kind::kMalformedXml, message);
  }
  return handler.Build(fallback_id);
}

}  // namespace condensedly
