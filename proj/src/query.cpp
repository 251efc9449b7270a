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

#include "condensedly/query.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "condensedly/text.hpp"

namespace condensedly::search {
namespace {

struct Lexeme {
  enum class Kind { kWord, kAnd, kOr, kNot, kOpen, kClose, kEnd };
  Kind kind;
  std::string text;
};

std::vector<Lexeme> lex(std::string_view q) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < q.size()) {
    char c = q[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (c == '(') {
      out.push_back({Lexeme::Kind::kOpen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Lexeme::Kind::kClose, ")"});
      ++i;
    } else {
      std::size_t start = i;
      while (i < q.size() && q[i] != ' ' && q[i] != '\t' && q[i] != '\n' &&
             q[i] != '\r' && q[i] != '(' && q[i] != ')') {
        ++i;
      }
      std::string word(q.substr(start, i - start));
      if (word == "AND") {
        out.push_back({Lexeme::Kind::kAnd, word});
      } else if (word == "OR") {
        out.push_back({Lexeme::Kind::kOr, word});
      } else if (word == "NOT") {
        out.push_back({Lexeme::Kind::kNot, word});
      } else {
        out.push_back({Lexeme::Kind::kWord, std::move(word)});
      }
    }
  }
  out.push_back({Lexeme::Kind::kEnd, ""});
  return out;
}

using Node = std::optional<Query>;

Node combine_and(Node a, Node b) {
  if (!a) return b;
  if (!b) return a;
  return Query::And(std::move(*a), std::move(*b));
}

Node combine_or(Node a, Node b) {
  if (!a) return b;
  if (!b) return a;
  return Query::Or(std::move(*a), std::move(*b));
}

class Parser {
 public:
  explicit Parser(std::vector<Lexeme> lexemes) : lx_(std::move(lexemes)) {}

  Node ParseAll() {
    Node n = ParseOr();
    if (Peek() != Lexeme::Kind::kEnd) Fail("unexpected '" + lx_[pos_].text + "'");
    return n;
  }

 private:
  Lexeme::Kind Peek() const { return lx_[pos_].kind; }

  [[noreturn]] void Fail(const std::string& message) const {
    throw QueryError(QueryError::Kind::kSyntaxError, message);
  }

  Node ParseOr() {
    Node left = ParseAnd();
    while (Peek() == Lexeme::Kind::kOr) {
      ++pos_;
      left = combine_or(std::move(left), ParseAnd());
    }
    return left;
  }

  Node ParseAnd() {
    Node left = ParseUnary();
    while (true) {
      Lexeme::Kind k = Peek();
      if (k == Lexeme::Kind::kAnd) {
        ++pos_;
      } else if (k != Lexeme::Kind::kWord && k != Lexeme::Kind::kNot &&
                 k != Lexeme::Kind::kOpen) {
        break;
      }
      left = combine_and(std::move(left), ParseUnary());
    }
    return left;
  }

  Node ParseUnary() {
    if (Peek() == Lexeme::Kind::kNot) {
      ++pos_;
      Node operand = ParseUnary();
      if (!operand) return std::nullopt;
      return Query::Not(std::move(*operand));
    }
    return ParsePrimary();
  }

  Node ParsePrimary() {
    const Lexeme& lexeme = lx_[pos_];
    switch (lexeme.kind) {
      case Lexeme::Kind::kOpen: {
        ++pos_;
        Node inner = ParseOr();
        if (Peek() != Lexeme::Kind::kClose) Fail("unbalanced '('");
        ++pos_;
        return inner;
      }
      case Lexeme::Kind::kWord:
        ++pos_;
        return WordNode(lexeme.text);
      case Lexeme::Kind::kEnd:
        Fail(pos_ == 0 ? "empty query" : "unexpected end of query");
      case Lexeme::Kind::kClose:
        Fail("unexpected ')'");
      default:
        Fail("operator '" + lexeme.text + "' is missing an operand");
    }
  }

  Node WordNode(const std::string& word) {
    if (ascii_lower(word.substr(0, 5)) == "pmid:") {
      std::string digits = word.substr(5);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                         [](char c) { return c >= '0' && c <= '9'; })) {
        Fail("'" + word + "' is not a valid PMID query");
      }
      return Query::Pmid(std::move(digits));
    }
    std::vector<std::string> stems;
    for (const Token& t : tokenize(word)) {
      auto stem = normalize_term(t.surface);
      if (stem && std::find(stems.begin(), stems.end(), *stem) == stems.end()) {
        stems.push_back(std::move(*stem));
      }
    }
    Node node;
    for (std::string& s : stems) node = combine_and(std::move(node), Query::Term(std::move(s)));
    return node;
  }

  std::vector<Lexeme> lx_;
  std::size_t pos_ = 0;
};

}  // namespace

Query Query::Term(std::string stem) { return {Kind::kTerm, std::move(stem), {}}; }

Query Query::Pmid(std::string digits) { return {Kind::kPmid, std::move(digits), {}}; }

Query Query::And(Query left, Query right) {
  Query q{Kind::kAnd, {}, {}};
  q.children.push_back(std::move(left));
  q.children.push_back(std::move(right));
  return q;
}

Query Query::Or(Query left, Query right) {
  Query q{Kind::kOr, {}, {}};
  q.children.push_back(std::move(left));
  q.children.push_back(std::move(right));
  return q;
}

Query Query::Not(Query operand) {
  Query q{Kind::kNot, {}, {}};
  q.children.push_back(std::move(operand));
  return q;
}

std::string to_string(const Query& q) {
  switch (q.kind) {
    case Query::Kind::kTerm:
      return q.value;
    case Query::Kind::kPmid:
      return "Pmid(" + q.value + ")";
    case Query::Kind::kNot:
      return "Not(" + to_string(q.children[0]) + ")";
    case Query::Kind::kAnd:
      return "And(" + to_string(q.children[0]) + "," + to_string(q.children[1]) + ")";
    case Query::Kind::kOr:
      return "Or(" + to_string(q.children[0]) + "," + to_string(q.children[1]) + ")";
  }
  return {};
}

bool is_positive(const Query& q) {
  switch (q.kind) {
    case Query::Kind::kTerm:
    case Query::Kind::kPmid:
      return true;
    case Query::Kind::kNot:
      return false;
    case Query::Kind::kAnd:
      return is_positive(q.children[0]) || is_positive(q.children[1]);
    case Query::Kind::kOr:
      return is_positive(q.children[0]) && is_positive(q.children[1]);
  }
  return false;
}

Query parse_query(std::string_view text) {
  Parser parser(lex(text));
  Node root = parser.ParseAll();
  if (!root) {
    throw QueryError(QueryError::Kind::kSyntaxError, "query has no searchable terms");
  }
  if (!is_positive(*root)) {
    throw QueryError(QueryError::Kind::kPureNegation,
                     "query has no positive term to restrict the negation");
  }
  return std::move(*root);
}

}  // namespace condensedly::search
